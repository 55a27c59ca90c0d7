// SPDX-License-Identifier: Apache-2.0

//! C ABI over the `amtree` library.
//!
//! Every fallible function returns an [`AmtStatus`]. On failure the message
//! is kept per thread and can be copied out with [`amt_last_error`].
//! Output pointers are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use amtree::coder::{build_code_with_bound, Distribution};
use amtree::realweight::{alpha_real, AlgoChoice, WeightSeq};
use amtree::{alpha_int_fast, Error, LevelTree};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    /// The operation is not allowed in the handle's current state.
    InvalidState = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmtAlgorithm {
    Auto = 0,
    New = 1,
    Sorted = 2,
}

/// Opaque dynamic level tree.
pub struct AmtLevelTree {
    inner: LevelTree,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend(msg.bytes().filter(|&b| b != 0));
    });
}

fn status_of(e: &Error) -> AmtStatus {
    match e {
        Error::AlreadySet(_) | Error::IntegralWeight(_) | Error::NothingToUndo => AmtStatus::InvalidState,
        e if e.is_internal() => AmtStatus::Internal,
        _ => AmtStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), AmtStatus>) -> AmtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AmtStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside amtree");
            AmtStatus::Internal
        }
    }
}

fn fail(e: Error) -> AmtStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn null(what: &str) -> AmtStatus {
    set_error(&format!("{what} is null"));
    AmtStatus::NullPointer
}

/// # Safety
/// `p` must be null or point to `n` readable elements.
unsafe fn input<'a, T>(p: *const T, n: usize, what: &str) -> Result<&'a [T], AmtStatus> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, n))
}

fn write_depths(out: *mut u32, depths: &[u32]) {
    if !out.is_null() {
        // SAFETY: callers document that a non-null `out` holds `n` slots.
        unsafe { ptr::copy_nonoverlapping(depths.as_ptr(), out, depths.len()) };
    }
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn amt_status_str(status: AmtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        AmtStatus::Ok => c"ok",
        AmtStatus::NullPointer => c"null pointer",
        AmtStatus::InvalidInput => c"invalid input",
        AmtStatus::InvalidState => c"invalid state",
        AmtStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Copies the calling thread's last error message into `buf` as a
/// NUL-terminated string, truncating to `len - 1` bytes. Returns the full
/// message length without the terminator.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn amt_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && len > 0 {
            let k = e.len().min(len - 1);
            ptr::copy_nonoverlapping(e.as_ptr().cast::<c_char>(), buf, k);
            *buf.add(k) = 0;
        }
        e.len()
    })
}

/// Minimax cost of integer weights. `depths` may be null; otherwise it
/// receives `n` leaf depths.
///
/// # Safety
/// `y` must point to `n` values, `cost` must be writable, and `depths`
/// must be null or hold `n` slots.
#[no_mangle]
pub unsafe extern "C" fn amt_alpha_int(y: *const i64, n: usize, cost: *mut i64, depths: *mut u32) -> AmtStatus {
    guard(|| {
        let y = input(y, n, "weights")?;
        if cost.is_null() {
            return Err(null("cost"));
        }
        let r = alpha_int_fast(y).map_err(fail)?;
        *cost = r.cost;
        write_depths(depths, r.depths.as_slice());
        Ok(())
    })
}

/// Minimax cost of real weights and the critical offset. `algorithm` is an
/// [`AmtAlgorithm`] value. `depths` may be null; otherwise it receives `n`
/// leaf depths.
///
/// # Safety
/// `w` must point to `n` values, `alpha` and `offset` must be writable,
/// and `depths` must be null or hold `n` slots.
#[no_mangle]
pub unsafe extern "C" fn amt_alpha_real(
    w: *const f64,
    n: usize,
    algorithm: u32,
    alpha: *mut f64,
    offset: *mut f64,
    depths: *mut u32,
) -> AmtStatus {
    guard(|| {
        let w = input(w, n, "weights")?;
        if alpha.is_null() || offset.is_null() {
            return Err(null("output"));
        }
        let choice = match algorithm {
            x if x == AmtAlgorithm::Auto as u32 => AlgoChoice::Auto,
            x if x == AmtAlgorithm::New as u32 => AlgoChoice::New,
            x if x == AmtAlgorithm::Sorted as u32 => AlgoChoice::Sorted,
            x => {
                set_error(&format!("unknown algorithm {x}"));
                return Err(AmtStatus::InvalidInput);
            }
        };
        let seq = WeightSeq::new(w.to_vec()).map_err(fail)?;
        let r = alpha_real(&seq, choice).map_err(fail)?;
        *alpha = r.alpha;
        *offset = r.offset;
        write_depths(depths, r.depths.as_slice());
        Ok(())
    })
}

/// Codeword lengths of the alphabetic code built for sample probabilities
/// `q` (which must be positive and sum to 1), and its redundancy bound.
///
/// # Safety
/// `q` must point to `n` values, `lengths` must hold `n` slots, and
/// `bound` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn amt_code_lengths(q: *const f64, n: usize, lengths: *mut u32, bound: *mut f64) -> AmtStatus {
    guard(|| {
        let q = input(q, n, "probabilities")?;
        if lengths.is_null() {
            return Err(null("lengths"));
        }
        let dist = Distribution::from_probs(q.to_vec()).map_err(fail)?;
        let (book, b) = build_code_with_bound(&dist).map_err(fail)?;
        write_depths(lengths, &book.lengths());
        if !bound.is_null() {
            *bound = b;
        }
        Ok(())
    })
}

/// Level tree over real weights. Free with [`amt_level_tree_free`].
///
/// # Safety
/// `w` must point to `n` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn amt_level_tree_new(w: *const f64, n: usize, out: *mut *mut AmtLevelTree) -> AmtStatus {
    guard(|| {
        let w = input(w, n, "weights")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = LevelTree::build(w).map_err(fail)?;
        *out = Box::into_raw(Box::new(AmtLevelTree { inner }));
        Ok(())
    })
}

/// Level tree over integer weights; no position is settable.
///
/// # Safety
/// `y` must point to `n` values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn amt_level_tree_new_int(y: *const i64, n: usize, out: *mut *mut AmtLevelTree) -> AmtStatus {
    guard(|| {
        let y = input(y, n, "weights")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = LevelTree::from_int(y).map_err(fail)?;
        *out = Box::into_raw(Box::new(AmtLevelTree { inner }));
        Ok(())
    })
}

/// Lowers the ceiling at position `i` (0-based) by one.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn amt_level_tree_set(tree: *mut AmtLevelTree, i: usize) -> AmtStatus {
    guard(|| {
        let t = tree.as_mut().ok_or_else(|| null("tree"))?;
        t.inner.set(i).map_err(fail)
    })
}

/// Reverts the most recent set that has not been undone.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn amt_level_tree_undo(tree: *mut AmtLevelTree) -> AmtStatus {
    guard(|| {
        let t = tree.as_mut().ok_or_else(|| null("tree"))?;
        t.inner.undo().map_err(fail)
    })
}

/// # Safety
/// `tree` must be null or a live handle and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn amt_level_tree_cost(tree: *const AmtLevelTree, out: *mut i64) -> AmtStatus {
    guard(|| {
        let t = tree.as_ref().ok_or_else(|| null("tree"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = t.inner.cost();
        Ok(())
    })
}

/// Number of leaves, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn amt_level_tree_len(tree: *const AmtLevelTree) -> usize {
    tree.as_ref().map_or(0, |t| t.inner.len())
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `tree` must be null or a live handle, and is dangling afterwards.
#[no_mangle]
pub unsafe extern "C" fn amt_level_tree_free(tree: *mut AmtLevelTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

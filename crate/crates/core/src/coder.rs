// SPDX-License-Identifier: Apache-2.0

//! Alphabetic prefix codes from a sample distribution.
//!
//! With sample distribution `Q` and true distribution `P`, the average
//! codeword length of a code `C` is
//!
//! ```text
//! sum p_i |c_i| = H(P) + D(P||Q) + sum p_i (log2 q_i + |c_i|)
//! ```
//!
//! The last term is at most `max_i (log2 q_i + |c_i|)`, which is smallest
//! when the code's trie is a minimax tree for `log2 q_1, ..., log2 q_n`.
//! That minimum is the redundancy bound reported here.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minimax::check_profile;
use crate::realweight::{alpha_real, AlgoChoice, RealCostResult, WeightSeq};

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    labels: Vec<String>,
    probs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counts: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Smoothing {
    #[default]
    None,
    AddOne,
}

fn check_labels(labels: &[String]) -> Result<()> {
    match labels.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(Error::LabelOrder(i + 1)),
        None => Ok(()),
    }
}

impl Distribution {
    pub fn new(labels: Vec<String>, probs: Vec<f64>) -> Result<Self> {
        if labels.len() != probs.len() {
            return Err(Error::LengthMismatch { left: labels.len(), right: probs.len() });
        }
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((index, &value)) = probs.iter().enumerate().find(|(_, p)| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidProbability { index, value });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized(total));
        }
        check_labels(&labels)?;
        Ok(Distribution { labels, probs, counts: None })
    }

    /// A distribution over symbols named by zero-padded index, for callers
    /// that only care about the numbers.
    pub fn from_probs(probs: Vec<f64>) -> Result<Self> {
        let width = probs.len().to_string().len();
        let labels = (0..probs.len()).map(|i| format!("{i:0width$}")).collect();
        Self::new(labels, probs)
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn counts(&self) -> Option<&[u64]> {
        self.counts.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn entropy(&self) -> f64 {
        entropy(&self.probs)
    }

    pub fn relative_entropy(&self, q: &Distribution) -> Result<f64> {
        same_alphabet(&self.labels, &q.labels)?;
        relative_entropy(&self.probs, &q.probs).map_err(|e| relabel(e, &self.labels))
    }
}

fn relabel(e: Error, labels: &[String]) -> Error {
    match e {
        Error::UndefinedRelativeEntropy { label } => {
            let i: usize = label.trim_start_matches('#').parse().unwrap_or(0);
            Error::UndefinedRelativeEntropy { label: labels.get(i).cloned().unwrap_or(label) }
        }
        other => other,
    }
}

fn same_alphabet(a: &[String], b: &[String]) -> Result<()> {
    if a != b {
        return Err(Error::InvalidCodeBook(format!("alphabets differ ({} vs {} symbols)", a.len(), b.len())));
    }
    Ok(())
}

/// Normalizes counts over a declared alphabet. `AddOne` adds one to every
/// count first so that every symbol gets positive probability.
pub fn empirical_distribution(labels: Vec<String>, counts: Vec<u64>, smoothing: Smoothing) -> Result<Distribution> {
    if labels.len() != counts.len() {
        return Err(Error::LengthMismatch { left: labels.len(), right: counts.len() });
    }
    if counts.is_empty() {
        return Err(Error::Empty);
    }
    if counts.iter().all(|&c| c == 0) {
        return Err(Error::ZeroMass);
    }
    let adjusted: Vec<u64> = match smoothing {
        Smoothing::None => counts.clone(),
        Smoothing::AddOne => counts.iter().map(|&c| c + 1).collect(),
    };
    let total: u64 = adjusted.iter().sum();
    let probs = adjusted.iter().map(|&c| c as f64 / total as f64).collect();
    let mut d = Distribution::new(labels, probs)?;
    d.counts = Some(counts);
    Ok(d)
}

/// `H(P) = sum p_i log2(1/p_i)`; zero-probability terms contribute nothing.
pub fn entropy(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| x * (1.0 / x).log2()).sum()
}

/// `D(P||Q) = sum p_i log2(p_i/q_i)`; undefined when some `q_i = 0 < p_i`.
pub fn relative_entropy(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    let mut d = 0.0;
    for (i, (&pi, &qi)) in p.iter().zip(q).enumerate() {
        if pi > 0.0 {
            if qi <= 0.0 {
                return Err(Error::UndefinedRelativeEntropy { label: format!("#{i}") });
            }
            d += pi * (pi / qi).log2();
        }
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeEntry {
    pub label: String,
    pub codeword: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeBook {
    labels: Vec<String>,
    codewords: Vec<String>,
}

/// Serialized form. The sample probabilities ride along so that a stored
/// codebook can be evaluated later without the sample.
#[derive(Serialize, Deserialize)]
struct CodeBookEntryJson {
    label: String,
    codeword: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probability: Option<f64>,
}

impl CodeBook {
    pub fn new(labels: Vec<String>, codewords: Vec<String>) -> Result<Self> {
        let book = CodeBook { labels, codewords };
        book.validate()?;
        Ok(book)
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn codewords(&self) -> &[String] {
        &self.codewords
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.codewords.iter().map(|c| c.len() as u32).collect()
    }

    pub fn entries(&self) -> Vec<CodeEntry> {
        self.labels
            .iter()
            .zip(&self.codewords)
            .map(|(label, codeword)| CodeEntry { label: label.clone(), codeword: codeword.clone() })
            .collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// Prefix-free, alphabetic, and Kraft sum exactly 1.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidCodeBook(m));
        if self.labels.len() != self.codewords.len() {
            return bad("label and codeword counts differ".into());
        }
        if self.codewords.is_empty() {
            return bad("empty codebook".into());
        }
        check_labels(&self.labels)?;
        if let Some(c) = self.codewords.iter().find(|c| c.bytes().any(|b| b != b'0' && b != b'1')) {
            return bad(format!("codeword {c:?} is not binary"));
        }
        for (i, w) in self.codewords.windows(2).enumerate() {
            if w[0] >= w[1] {
                return bad(format!("codewords {} and {} are not in increasing order", i, i + 1));
            }
            // in sorted order a prefix can only be followed by its extensions
            if w[1].starts_with(w[0].as_str()) {
                return bad(format!("codeword {i} is a prefix of codeword {}", i + 1));
            }
        }
        if !kraft_sum_is_one(&self.lengths()) {
            return bad("Kraft sum is not 1".into());
        }
        Ok(())
    }

    pub fn to_json(&self, probabilities: Option<&[f64]>) -> serde_json::Value {
        let entries: Vec<CodeBookEntryJson> = self
            .labels
            .iter()
            .zip(&self.codewords)
            .enumerate()
            .map(|(i, (label, codeword))| CodeBookEntryJson {
                label: label.clone(),
                codeword: codeword.clone(),
                probability: probabilities.map(|p| p[i]),
            })
            .collect();
        serde_json::to_value(entries).expect("codebook serializes")
    }

    /// Parses a codebook and, when every entry carries one, the sample
    /// distribution stored alongside it.
    pub fn from_json(text: &str) -> Result<(CodeBook, Option<Distribution>)> {
        let entries: Vec<CodeBookEntryJson> =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let labels: Vec<String> = entries.iter().map(|e| e.label.clone()).collect();
        let book = CodeBook::new(labels.clone(), entries.iter().map(|e| e.codeword.clone()).collect())?;
        let probs: Option<Vec<f64>> = entries.iter().map(|e| e.probability).collect();
        let q = probs.map(|p| Distribution::new(labels, p)).transpose()?;
        Ok((book, q))
    }
}

/// Exact test of `sum 2^-l_i == 1` using a binary counter of width
/// `max l_i + 1`.
pub fn kraft_sum_is_one(lengths: &[u32]) -> bool {
    let Some(&max) = lengths.iter().max() else {
        return false;
    };
    let bits = max as usize + 1;
    let mut limbs = vec![0u64; bits.div_ceil(64) + 1];
    for &l in lengths {
        let mut pos = (max - l) as usize;
        // add 2^pos with carry
        loop {
            let (limb, bit) = (pos / 64, pos % 64);
            if limb >= limbs.len() {
                return false;
            }
            let before = limbs[limb];
            limbs[limb] = before.wrapping_add(1 << bit);
            if limbs[limb] >= before {
                break;
            }
            pos = (limb + 1) * 64;
        }
    }
    // the sum must be exactly 2^max
    let (limb, bit) = (max as usize / 64, max as usize % 64);
    limbs.iter().enumerate().all(|(i, &v)| if i == limb { v == 1 << bit } else { v == 0 })
}

/// Canonical left-to-right codewords for a strictly binary depth profile:
/// the first leaf is all zeros, and each next codeword is the previous one
/// plus one at its own length, padded with zeros.
pub fn codewords_from_depths(depths: &[u32]) -> Result<Vec<String>> {
    check_profile(depths)?;
    let mut out = Vec::with_capacity(depths.len());
    let mut cur: Vec<u8> = vec![b'0'; depths[0] as usize];
    out.push(String::from_utf8(cur.clone()).unwrap());
    for &d in &depths[1..] {
        while cur.last() == Some(&b'1') {
            cur.pop();
        }
        *cur.last_mut().expect("valid profile") = b'1';
        debug_assert!(d as usize >= cur.len());
        cur.resize(d as usize, b'0');
        out.push(String::from_utf8(cur.clone()).unwrap());
    }
    Ok(out)
}

fn log_weights(q: &Distribution) -> Result<WeightSeq> {
    if let Some(i) = q.probs.iter().position(|&x| x <= 0.0) {
        return Err(Error::ZeroProbability { label: q.labels[i].clone() });
    }
    WeightSeq::new(q.probs.iter().map(|&x| x.log2()).collect())
}

fn minimax_for(q: &Distribution) -> Result<RealCostResult> {
    alpha_real(&log_weights(q)?, AlgoChoice::Auto)
}

/// Alphabetic code whose trie is a minimax tree for `log2 q_i`.
pub fn build_code(q: &Distribution) -> Result<CodeBook> {
    build_code_with_bound(q).map(|(book, _)| book)
}

/// [`build_code`] together with the redundancy bound it attains.
pub fn build_code_with_bound(q: &Distribution) -> Result<(CodeBook, f64)> {
    let r = minimax_for(q)?;
    let codewords = codewords_from_depths(r.depths.as_slice())?;
    Ok((CodeBook::new(q.labels.clone(), codewords)?, r.alpha))
}

/// `alpha(log2 q_1, ..., log2 q_n)`.
pub fn redundancy_bound(q: &Distribution) -> Result<f64> {
    Ok(minimax_for(q)?.alpha)
}

/// Number of distinct `ceil(log2 q_i)`.
pub fn distinct_log_ceilings(q: &Distribution) -> Result<usize> {
    Ok(log_weights(q)?.d())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeReport {
    pub avg_len: f64,
    pub entropy: f64,
    pub relative_entropy: f64,
    pub excess: f64,
    pub bound: f64,
}

pub fn evaluate(p: &Distribution, code: &CodeBook, q: &Distribution) -> Result<CodeReport> {
    same_alphabet(&p.labels, &code.labels)?;
    same_alphabet(&q.labels, &code.labels)?;
    let avg_len: f64 = p.probs.iter().zip(&code.codewords).map(|(&x, c)| x * c.len() as f64).sum();
    let entropy = p.entropy();
    let relative_entropy = p.relative_entropy(q)?;
    Ok(CodeReport {
        avg_len,
        entropy,
        relative_entropy,
        excess: avg_len - entropy - relative_entropy,
        bound: redundancy_bound(q)?,
    })
}

/// `max_i (log2 q_i + |c_i|)` for a given code.
pub fn worst_case_excess(q: &Distribution, code: &CodeBook) -> Result<f64> {
    same_alphabet(&q.labels, &code.labels)?;
    Ok(q.probs.iter().zip(&code.codewords).map(|(&x, c)| x.log2() + c.len() as f64).fold(f64::NEG_INFINITY, f64::max))
}

pub fn encode(symbols: &[usize], code: &CodeBook) -> Result<Vec<bool>> {
    let mut bits = Vec::new();
    for &s in symbols {
        let c = code.codewords.get(s).ok_or(Error::IndexOutOfRange { index: s, n: code.len() })?;
        bits.extend(c.bytes().map(|b| b == b'1'));
    }
    Ok(bits)
}

/// Inverse of [`encode`]. A single-symbol codebook has the empty codeword
/// and decodes only the empty stream.
pub fn decode(bits: &[bool], code: &CodeBook) -> Result<Vec<usize>> {
    const NONE: u32 = u32::MAX;
    // trie nodes: children, and the symbol ending there
    let mut trie: Vec<([u32; 2], u32)> = vec![([NONE; 2], NONE)];
    for (s, c) in code.codewords.iter().enumerate() {
        let mut at = 0usize;
        for b in c.bytes() {
            let k = (b == b'1') as usize;
            if trie[at].0[k] == NONE {
                trie[at].0[k] = trie.len() as u32;
                trie.push(([NONE; 2], NONE));
            }
            at = trie[at].0[k] as usize;
        }
        trie[at].1 = s as u32;
    }
    if trie[0].1 != NONE {
        return match bits.is_empty() {
            true => Ok(Vec::new()),
            false => Err(Error::DanglingSuffix { offset: 0 }),
        };
    }
    let mut out = Vec::new();
    let (mut at, mut start) = (0usize, 0usize);
    for (i, &b) in bits.iter().enumerate() {
        let next = trie[at].0[b as usize];
        if next == NONE {
            return Err(Error::InvalidCodeBook(format!("no codeword continues at bit {i}")));
        }
        at = next as usize;
        if trie[at].1 != NONE {
            out.push(trie[at].1 as usize);
            at = 0;
            start = i + 1;
        }
    }
    if at != 0 {
        return Err(Error::DanglingSuffix { offset: start });
    }
    Ok(out)
}

/// Label used for a raw byte: the character with that code point, so label
/// order equals byte order.
pub fn byte_label(b: u8) -> String {
    char::from(b).to_string()
}

/// Maps a label produced by [`byte_label`] back to its byte.
pub fn label_byte(label: &str) -> Option<u8> {
    let mut it = label.chars();
    match (it.next(), it.next()) {
        (Some(c), None) => u8::try_from(u32::from(c)).ok(),
        _ => None,
    }
}

/// Byte histogram of a corpus, restricted to bytes that occur.
pub fn byte_counts(data: &[u8]) -> (Vec<String>, Vec<u64>) {
    let mut hist = [0u64; 256];
    for &b in data {
        hist[b as usize] += 1;
    }
    (0..=255u8).filter(|&b| hist[b as usize] > 0).map(|b| (byte_label(b), hist[b as usize])).unzip()
}

/// Counts every byte of `data` over a declared alphabet of labels.
pub fn count_over(labels: &[String], data: &[u8]) -> Result<Vec<u64>> {
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut counts = vec![0u64; labels.len()];
    for &b in data {
        let l = byte_label(b);
        let i = *index.get(l.as_str()).ok_or(Error::UnknownSymbol(l))?;
        counts[i] += 1;
    }
    Ok(counts)
}

/// Symbol indices of a byte string under a codebook's labels.
pub fn symbols_of_bytes(data: &[u8], code: &CodeBook) -> Result<Vec<usize>> {
    data.iter()
        .map(|&b| {
            let l = byte_label(b);
            code.index_of(&l).ok_or(Error::UnknownSymbol(l))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(p: &[f64]) -> Distribution {
        Distribution::from_probs(p.to_vec()).unwrap()
    }

    #[test]
    fn empirical_examples() {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let d = empirical_distribution(labels(3), vec![2, 1, 1], Smoothing::None).unwrap();
        assert_eq!(d.probs(), &[0.5, 0.25, 0.25]);
        let d = empirical_distribution(labels(2), vec![1, 0], Smoothing::AddOne).unwrap();
        assert!((d.probs()[0] - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.probs()[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.counts(), Some(&[1u64, 0][..]));
        assert_eq!(empirical_distribution(labels(2), vec![0, 0], Smoothing::None), Err(Error::ZeroMass));
    }

    #[test]
    fn distribution_validation() {
        assert!(matches!(Distribution::from_probs(vec![0.5, 0.6]), Err(Error::NotNormalized(_))));
        assert!(matches!(Distribution::from_probs(vec![1.5, -0.5]), Err(Error::InvalidProbability { index: 1, .. })));
        assert_eq!(Distribution::new(vec!["b".into(), "a".into()], vec![0.5, 0.5]), Err(Error::LabelOrder(1)));
        assert_eq!(dist(&[0.5; 2]).labels(), &["0", "1"]);
        assert_eq!(dist(&[0.1; 10]).labels()[9], "09");
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(&[0.25; 4]), 2.0);
        let p = [0.1, 0.2, 0.7];
        assert_eq!(relative_entropy(&p, &p).unwrap(), 0.0);
        let d = relative_entropy(&[0.5, 0.5], &[0.25, 0.75]).unwrap();
        assert!((d - (0.5 + 0.5 * (2.0f64 / 3.0).log2())).abs() < 1e-15);
        assert!((d - 0.2075187496).abs() < 1e-9);
        let e = dist(&[0.5, 0.5]).relative_entropy(&dist(&[1.0, 0.0])).unwrap_err();
        assert_eq!(e, Error::UndefinedRelativeEntropy { label: "1".into() });
    }

    #[test]
    fn codewords_from_profiles() {
        assert_eq!(codewords_from_depths(&[1, 2, 2]).unwrap(), ["0", "10", "11"]);
        assert_eq!(codewords_from_depths(&[2, 2, 1]).unwrap(), ["00", "01", "1"]);
        assert_eq!(codewords_from_depths(&[0]).unwrap(), [""]);
        assert_eq!(codewords_from_depths(&[3, 3, 2, 1]).unwrap(), ["000", "001", "01", "1"]);
        assert!(codewords_from_depths(&[2, 2, 2]).is_err());
    }

    #[test]
    fn kraft_exact() {
        assert!(kraft_sum_is_one(&[1, 2, 2]));
        assert!(!kraft_sum_is_one(&[2, 2, 2]));
        assert!(!kraft_sum_is_one(&[1, 1, 1]));
        let mut long: Vec<u32> = (1..200).collect();
        long.push(199);
        assert!(kraft_sum_is_one(&long));
        long.push(199);
        assert!(!kraft_sum_is_one(&long));
    }

    #[test]
    fn build_code_examples() {
        let q = dist(&[0.5, 0.25, 0.25]);
        let (c, bound) = build_code_with_bound(&q).unwrap();
        assert_eq!(c.codewords(), ["0", "10", "11"]);
        assert_eq!(bound, 0.0);

        let q = dist(&[0.125; 8]);
        let c = build_code(&q).unwrap();
        assert!(c.lengths().iter().all(|&l| l == 3));
        assert_eq!(redundancy_bound(&q).unwrap(), 0.0);

        // The middle symbol cannot be a depth-1 leaf in a 3-leaf ordered tree.
        let q = dist(&[0.25, 0.5, 0.25]);
        let (c, bound) = build_code_with_bound(&q).unwrap();
        assert_eq!(bound, 1.0);
        assert_eq!(worst_case_excess(&q, &c).unwrap(), 1.0);

        let q = dist(&[1.0 / 3.0; 3]);
        let b = redundancy_bound(&q).unwrap();
        assert!((b - (2.0 - 3f64.log2())).abs() < 1e-12);

        assert_eq!(build_code(&dist(&[1.0, 0.0])), Err(Error::ZeroProbability { label: "1".into() }));
    }

    #[test]
    fn evaluate_examples() {
        let q = dist(&[0.5, 0.25, 0.25]);
        let c = build_code(&q).unwrap();
        let r = evaluate(&q, &c, &q).unwrap();
        assert_eq!((r.avg_len, r.entropy, r.relative_entropy, r.excess, r.bound), (1.5, 1.5, 0.0, 0.0, 0.0));

        let p = dist(&[1.0, 0.0, 0.0]);
        let r = evaluate(&p, &c, &q).unwrap();
        assert_eq!((r.avg_len, r.entropy, r.relative_entropy, r.excess, r.bound), (1.0, 0.0, 1.0, 0.0, 0.0));
    }

    #[test]
    fn codebook_validation() {
        let l = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert!(CodeBook::new(l(3), s(&["0", "10", "11"])).is_ok());
        assert!(CodeBook::new(l(3), s(&["10", "0", "11"])).is_err());
        assert!(CodeBook::new(l(3), s(&["0", "01", "11"])).is_err());
        assert!(CodeBook::new(l(2), s(&["0", "10"])).is_err());
        assert!(CodeBook::new(l(2), s(&["0", "1x"])).is_err());
    }

    #[test]
    fn encode_decode_and_errors() {
        let c = build_code(&dist(&[0.5, 0.25, 0.25])).unwrap();
        let bits = encode(&[0, 2, 1, 0], &c).unwrap();
        assert_eq!(bits.len(), 1 + 2 + 2 + 1);
        assert_eq!(decode(&bits, &c).unwrap(), [0, 2, 1, 0]);
        assert_eq!(decode(&bits[..4], &c), Err(Error::DanglingSuffix { offset: 3 }));

        let single = build_code(&dist(&[1.0])).unwrap();
        assert_eq!(single.codewords(), [""]);
        assert!(decode(&[], &single).unwrap().is_empty());
    }

    #[test]
    fn byte_labels_preserve_order() {
        let labels: Vec<String> = (0..=255u8).map(byte_label).collect();
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
        assert!((0..=255u8).all(|b| label_byte(&byte_label(b)) == Some(b)));
        let (l, c) = byte_counts(b"aab");
        assert_eq!((l, c), (vec!["a".to_string(), "b".to_string()], vec![2, 1]));
    }

    #[test]
    fn json_round_trip_keeps_probabilities() {
        let q = dist(&[0.5, 0.25, 0.25]);
        let c = build_code(&q).unwrap();
        let text = c.to_json(Some(q.probs())).to_string();
        let (c2, q2) = CodeBook::from_json(&text).unwrap();
        assert_eq!(c2, c);
        assert_eq!(q2.unwrap(), q);
        let (_, none) = CodeBook::from_json(&c.to_json(None).to_string()).unwrap();
        assert!(none.is_none());
    }
}

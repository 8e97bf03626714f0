use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::KatoError;

/// A word `A_{j_1} ⋯ A_{j_k}` in the elementary matrices of size `n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeqRepr", into = "SeqRepr")]
pub struct FactorSeq {
    n: usize,
    indices: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SeqRepr {
    n: usize,
    indices: Vec<usize>,
}

impl TryFrom<SeqRepr> for FactorSeq {
    type Error = KatoError;
    fn try_from(r: SeqRepr) -> Result<Self, KatoError> {
        FactorSeq::new(r.n, r.indices)
    }
}

impl From<FactorSeq> for SeqRepr {
    fn from(s: FactorSeq) -> Self {
        SeqRepr {
            n: s.n,
            indices: s.indices,
        }
    }
}

impl FactorSeq {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<Self, KatoError> {
        if n < 2 {
            return Err(KatoError::Dimension(n));
        }
        if indices.is_empty() {
            return Err(KatoError::EmptyWord);
        }
        if let Some(&j) = indices.iter().find(|&&j| j == 0 || j > n) {
            return Err(KatoError::IndexOutOfRange { j, n });
        }
        Ok(FactorSeq { n, indices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Word length, i.e. the number of blow-ups.
    pub fn k(&self) -> usize {
        self.indices.len()
    }

    /// False exactly for the powers `A_n^p`.
    pub fn is_kato(&self) -> bool {
        self.indices.iter().any(|&j| j != self.n)
    }

    /// `min j_p − 1`.
    pub fn type_l(&self) -> usize {
        self.indices.iter().min().copied().unwrap_or(1) - 1
    }

    /// The word repeated `p` times.
    pub fn repeat(&self, p: usize) -> Self {
        FactorSeq {
            n: self.n,
            indices: self.indices.repeat(p.max(1)),
        }
    }

    /// Parses `n=3:[2,3]` or `{"n":3,"indices":[2,3]}`.
    pub fn parse(s: &str) -> Result<Self, KatoError> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| KatoError::Parse(e.to_string()));
        }
        let bad = || KatoError::Parse(format!("expected n=<dim>:[j1,...], got {s:?}"));
        let rest = s.strip_prefix("n=").ok_or_else(bad)?;
        let (n, list) = rest.split_once(':').ok_or_else(bad)?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let list = list
            .trim()
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or_else(bad)?;
        let indices = list
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        FactorSeq::new(n, indices)
    }
}

impl FromStr for FactorSeq {
    type Err = KatoError;
    fn from_str(s: &str) -> Result<Self, KatoError> {
        FactorSeq::parse(s)
    }
}

impl fmt::Display for FactorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.indices.iter().map(|j| j.to_string()).collect();
        write!(f, "n={}:[{}]", self.n, items.join(","))
    }
}

impl fmt::Debug for FactorSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Lexicographically least rotation of the word. Cyclically equivalent
/// words give biholomorphic manifolds.
pub fn cyclic_normal_form(seq: &FactorSeq) -> FactorSeq {
    let w = &seq.indices;
    let best = (0..w.len())
        .map(|r| {
            let mut v = w[r..].to_vec();
            v.extend_from_slice(&w[..r]);
            v
        })
        .min()
        .expect("words are non-empty");
    FactorSeq {
        n: seq.n,
        indices: best,
    }
}

/// `Some(p)` when `cover` is, up to rotation, the word of `base` repeated
/// `p` times; the manifold of `cover` is then a `p`-sheeted cyclic cover of
/// the manifold of `base`.
pub fn cover_sheets(base: &FactorSeq, cover: &FactorSeq) -> Option<usize> {
    if base.n != cover.n || !cover.k().is_multiple_of(base.k()) {
        return None;
    }
    let p = cover.k() / base.k();
    (cyclic_normal_form(&base.repeat(p)) == cyclic_normal_form(cover)).then_some(p)
}

/// Determinant of the product, `∏ (−1)^(n − j_p)`.
pub fn det_from_word(seq: &FactorSeq) -> BigInt {
    let odd = seq.indices.iter().filter(|&&j| (seq.n - j) % 2 == 1).count();
    BigInt::from(if odd % 2 == 0 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(n: usize, w: &[usize]) -> FactorSeq {
        FactorSeq::new(n, w.to_vec()).unwrap()
    }

    #[test]
    fn text_and_json_roundtrip() {
        let s = seq(3, &[2, 3]);
        assert_eq!(s.to_string(), "n=3:[2,3]");
        assert_eq!(FactorSeq::parse("n=3:[2,3]").unwrap(), s);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"n":3,"indices":[2,3]}"#);
        assert_eq!(FactorSeq::parse(&j).unwrap(), s);
    }

    #[test]
    fn rejects_bad_words() {
        assert!(matches!(FactorSeq::parse("n=3:[]"), Err(KatoError::EmptyWord)));
        assert!(matches!(
            FactorSeq::parse("n=3:[4]"),
            Err(KatoError::IndexOutOfRange { j: 4, n: 3 })
        ));
        assert!(FactorSeq::parse(r#"{"n":2,"indices":[0]}"#).is_err());
        assert!(FactorSeq::parse("3:[1]").is_err());
    }

    #[test]
    fn kato_flag_excludes_powers_of_last() {
        assert!(!seq(2, &[2, 2, 2]).is_kato());
        assert!(seq(2, &[2, 1]).is_kato());
    }

    #[test]
    fn rotations() {
        assert_eq!(cyclic_normal_form(&seq(2, &[2, 1, 2])).indices(), &[1, 2, 2]);
        assert_eq!(cyclic_normal_form(&seq(2, &[1, 2])).indices(), &[1, 2]);
        assert_eq!(cyclic_normal_form(&seq(3, &[3, 1, 2])).indices(), &[1, 2, 3]);
    }

    #[test]
    fn covers() {
        let base = seq(3, &[2, 3]);
        assert_eq!(cover_sheets(&base, &seq(3, &[3, 2, 3, 2, 3, 2])), Some(3));
        assert_eq!(cover_sheets(&base, &seq(3, &[2, 3, 3, 2])), None);
        assert_eq!(cover_sheets(&base, &base), Some(1));
    }

    #[test]
    fn determinant_sign() {
        assert_eq!(det_from_word(&seq(3, &[2, 3])), BigInt::from(-1));
        assert_eq!(det_from_word(&seq(3, &[2, 3, 2, 3])), BigInt::from(1));
    }
}

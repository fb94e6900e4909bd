//! Validated family parameters.
//!
//! [`Params`] bundles the number of weights `r`, the shared parameter
//! `beta > 0`, and the weight ratios `c_1, ..., c_r`, each strictly between
//! 0 and 1 and pairwise distinct. Construction validates; every consumer can
//! rely on the invariants afterwards.

use serde::{Deserialize, Serialize};

use crate::rational::Rational;

/// Parameters `(r, beta, c)` of the polynomial family and its weights.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    r: usize,
    beta: Rational,
    c: Vec<Rational>,
}

/// Validation failure when building [`Params`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParamsError {
    #[error("r must be at least 1")]
    EmptyFamily,
    #[error("r = {r} does not match the number of c values ({found})")]
    LengthMismatch { r: usize, found: usize },
    #[error("beta = {0} must be positive")]
    BetaNotPositive(Rational),
    #[error("c_{index} = {value} must satisfy 0 < c < 1")]
    COutOfRange { index: usize, value: Rational },
    #[error("c_{i} and c_{j} are both {value}; the c values must be pairwise distinct")]
    CNotDistinct { i: usize, j: usize, value: Rational },
}

impl Params {
    pub fn new(beta: Rational, c: Vec<Rational>) -> Result<Params, ParamsError> {
        let r = c.len();
        if r == 0 {
            return Err(ParamsError::EmptyFamily);
        }
        if !beta.is_positive() {
            return Err(ParamsError::BetaNotPositive(beta));
        }
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_positive() || ck >= &Rational::one() {
                return Err(ParamsError::COutOfRange {
                    index: k + 1,
                    value: ck.clone(),
                });
            }
        }
        for i in 0..r {
            for j in (i + 1)..r {
                if c[i] == c[j] {
                    return Err(ParamsError::CNotDistinct {
                        i: i + 1,
                        j: j + 1,
                        value: c[i].clone(),
                    });
                }
            }
        }
        Ok(Params { r, beta, c })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// `c_i`, 1-based.
    pub fn c(&self, i: usize) -> &Rational {
        &self.c[i - 1]
    }

    pub fn c_all(&self) -> &[Rational] {
        &self.c
    }

    /// The same weights with `beta` replaced by `beta + delta`.
    /// Fails if the shifted value is not positive.
    pub fn with_beta_shift(&self, delta: i64) -> Result<Params, ParamsError> {
        Params::new(&self.beta + &Rational::from(delta), self.c.clone())
    }

    /// Weights permuted by `perm` (0-based slots): new `c_i = c[perm[i]]`.
    pub fn permuted(&self, perm: &[usize]) -> Params {
        assert_eq!(perm.len(), self.r, "permutation length mismatch");
        let c = perm.iter().map(|&j| self.c[j].clone()).collect();
        Params::new(self.beta.clone(), c).expect("permutation preserves validity")
    }

    /// Compact display tag used in report instances, e.g. `r=2 beta=3/2 c=1/3,1/2`.
    pub fn tag(&self) -> String {
        let cs: Vec<String> = self.c.iter().map(|c| c.to_string()).collect();
        format!("r={} beta={} c={}", self.r, self.beta, cs.join(","))
    }
}

impl std::fmt::Debug for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Params[{}]", self.tag())
    }
}

/// Unvalidated shape of a parameters file: `{"r": 2, "beta": "3/2", "c": ["1/3", "1/2"]}`.
#[derive(Serialize, Deserialize)]
pub struct ParamsFile {
    pub r: usize,
    pub beta: Rational,
    pub c: Vec<Rational>,
}

impl ParamsFile {
    pub fn validate(self) -> Result<Params, ParamsError> {
        if self.r != self.c.len() {
            return Err(ParamsError::LengthMismatch {
                r: self.r,
                found: self.c.len(),
            });
        }
        Params::new(self.beta, self.c)
    }
}

impl From<&Params> for ParamsFile {
    fn from(p: &Params) -> Self {
        ParamsFile {
            r: p.r(),
            beta: p.beta().clone(),
            c: p.c_all().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn accepts_valid_params() {
        let p = Params::new(q("3/2"), vec![q("1/3"), q("1/2")]).unwrap();
        assert_eq!(p.r(), 2);
        assert_eq!(p.c(1), &q("1/3"));
        assert_eq!(p.c(2), &q("1/2"));
        assert_eq!(p.tag(), "r=2 beta=3/2 c=1/3,1/2");
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(matches!(
            Params::new(q("1"), vec![]),
            Err(ParamsError::EmptyFamily)
        ));
        assert!(matches!(
            Params::new(q("0"), vec![q("1/2")]),
            Err(ParamsError::BetaNotPositive(_))
        ));
        assert!(matches!(
            Params::new(q("-2"), vec![q("1/2")]),
            Err(ParamsError::BetaNotPositive(_))
        ));
        assert!(matches!(
            Params::new(q("1"), vec![q("1")]),
            Err(ParamsError::COutOfRange { .. })
        ));
        assert!(matches!(
            Params::new(q("1"), vec![q("0")]),
            Err(ParamsError::COutOfRange { .. })
        ));
        assert!(matches!(
            Params::new(q("1"), vec![q("1/3"), q("1/3")]),
            Err(ParamsError::CNotDistinct { .. })
        ));
    }

    #[test]
    fn beta_shift_guards_positivity() {
        let p = Params::new(q("1"), vec![q("1/2")]).unwrap();
        assert!(p.with_beta_shift(1).is_ok());
        assert!(p.with_beta_shift(-1).is_err());
    }

    #[test]
    fn params_file_round_trip() {
        let json = r#"{"r":2,"beta":"3/2","c":["1/3","1/2"]}"#;
        let file: ParamsFile = serde_json::from_str(json).unwrap();
        let p = file.validate().unwrap();
        assert_eq!(p.tag(), "r=2 beta=3/2 c=1/3,1/2");
        let bad: ParamsFile = serde_json::from_str(r#"{"r":3,"beta":"1","c":["1/2"]}"#).unwrap();
        assert!(matches!(
            bad.validate(),
            Err(ParamsError::LengthMismatch { .. })
        ));
    }
}

use std::fmt;
use std::io::Read;
use std::path::PathBuf;

use katolab::dynamics::{DynamicsError, GaussianRationalPoint};
use katolab::formal::FormalError;
use katolab::invariants::InvariantsError;
use katolab::kato::{FactorSeq, KatoError, KatoMatrix};
use katolab::linalg::{IntMatrix, LinalgError};

/// A failed command, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    NotKato(String),
    CheckFailed(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::CheckFailed(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::NotKato(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::CheckFailed(_) => "check_failed",
            Failure::Invalid(_) => "invalid_input",
            Failure::NotKato(_) => "not_kato",
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::NotKato(m) | Failure::CheckFailed(m) => m,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.message())
    }
}

impl From<KatoError> for Failure {
    fn from(e: KatoError) -> Self {
        if e.is_not_kato() {
            Failure::NotKato(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<LinalgError> for Failure {
    fn from(e: LinalgError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<DynamicsError> for Failure {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Kato(k) => k.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<InvariantsError> for Failure {
    fn from(e: InvariantsError) -> Self {
        match e {
            InvariantsError::Kato(k) => k.into(),
            InvariantsError::Dynamics(d) => d.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

impl From<FormalError> for Failure {
    fn from(e: FormalError) -> Self {
        match e {
            FormalError::Kato(k) => k.into(),
            FormalError::Dynamics(d) => d.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

/// Reads the single input: the inline argument, the file, or stdin.
pub fn read_input(inline: Option<&str>, file: Option<&PathBuf>) -> Result<String, Failure> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(Failure::Invalid(
            "give the input either inline or with --file, not both".into(),
        )),
        (Some(s), None) => Ok(s.to_string()),
        (None, Some(p)) => std::fs::read_to_string(p)
            .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", p.display()))),
        (None, None) => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Invalid(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn looks_like_word(s: &str) -> bool {
    s.starts_with("n=") || (s.starts_with('{') && s.contains("\"indices\""))
}

pub fn parse_matrix(s: &str) -> Result<IntMatrix, Failure> {
    Ok(IntMatrix::parse(s.trim())?)
}

pub fn parse_word(s: &str) -> Result<FactorSeq, Failure> {
    FactorSeq::parse(s.trim()).map_err(|e| Failure::Invalid(e.to_string()))
}

/// A Kato matrix given either as a matrix or as a factor word.
pub fn parse_kato(s: &str) -> Result<KatoMatrix, Failure> {
    let s = s.trim();
    if looks_like_word(s) {
        Ok(KatoMatrix::from_word(parse_word(s)?)?)
    } else {
        Ok(KatoMatrix::new(parse_matrix(s)?)?)
    }
}

pub fn parse_point(s: &str) -> Result<GaussianRationalPoint, Failure> {
    Ok(GaussianRationalPoint::parse(s.trim())?)
}

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::cayley::{build_by_doubling, split_cayley, AlgebraRef, DoublingParams};
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem};
use crate::quadform::DEFAULT_HEIGHT_CAP;

use super::serial::algebra_from_text;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AlgebraSource {
    Split,
    /// Three parameters over `F 1`, or two over `F[a]` with `a^2 = a - c`.
    Doubling {
        c: Option<String>,
        mu: Vec<String>,
    },
    File {
        path: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Laws,
    LocalAut,
    TwoLocalSplit,
    TwoLocalDivision,
    Char2,
    Closure,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Laws => "laws",
            Suite::LocalAut => "local-aut",
            Suite::TwoLocalSplit => "two-local-split",
            Suite::TwoLocalDivision => "two-local-division",
            Suite::Char2 => "char2",
            Suite::Closure => "closure",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Human,
    Structured,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureGenerators {
    #[default]
    Automorphisms,
    /// Reflections in norm-1 vectors orthogonal to 1.
    Reflections,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub field: String,
    pub algebra: AlgebraSource,
    pub suite: Suite,
    pub trials: u64,
    pub seed: u64,
    pub closure_cap: usize,
    pub height_cap: u32,
    pub format: OutputFormat,
    /// Laws suite: every pair instead of samples. Defaults to exhaustive when
    /// the field is GF(2).
    pub exhaustive: Option<bool>,
    /// Two-local-split suite: also decide the diagonal candidate
    /// `u3 -> λ u3, v3 -> λ^-1 v3`.
    pub inject_lambda: Option<String>,
    pub generators: ClosureGenerators,
}

impl SuiteConfig {
    pub fn new(field: impl Into<String>, suite: Suite) -> Self {
        SuiteConfig {
            field: field.into(),
            algebra: AlgebraSource::Split,
            suite,
            trials: 20,
            seed: 0,
            closure_cap: 3_000_000,
            height_cap: DEFAULT_HEIGHT_CAP,
            format: OutputFormat::Human,
            exhaustive: None,
            inject_lambda: None,
            generators: ClosureGenerators::Automorphisms,
        }
    }

    pub fn parsed_field(&self) -> Result<Field> {
        Field::parse(&self.field).map_err(|e| invalid("field", e))
    }

    pub fn load_algebra(&self) -> Result<AlgebraRef> {
        let f = self.parsed_field()?;
        match &self.algebra {
            AlgebraSource::Split => Ok(split_cayley(f)),
            AlgebraSource::Doubling { c, mu } => {
                let el = |s: &String, name: &str| f.parse_elem(s).map_err(|e| invalid(name, e));
                let mu: Vec<FieldElem> = mu
                    .iter()
                    .map(|s| el(s, "algebra.mu"))
                    .collect::<Result<_>>()?;
                let params = match (c, mu.as_slice()) {
                    (None, [a, b, c]) => DoublingParams::Standard {
                        mu: [a.clone(), b.clone(), c.clone()],
                    },
                    (Some(c), [a, b]) => DoublingParams::TraceOne {
                        c: el(c, "algebra.c")?,
                        mu: [a.clone(), b.clone()],
                    },
                    (None, _) => {
                        return Err(Error::ConfigInvalid(
                            "algebra.mu: three parameters are needed without c".into(),
                        ))
                    }
                    (Some(_), _) => {
                        return Err(Error::ConfigInvalid(
                            "algebra.mu: two parameters are needed with c".into(),
                        ))
                    }
                };
                build_by_doubling(f, params).map_err(|e| invalid("algebra", e))
            }
            AlgebraSource::File { path } => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::ConfigInvalid(format!("algebra.path: {e}")))?;
                let alg = algebra_from_text(&text)?;
                if alg.field() != f {
                    return Err(Error::ConfigInvalid(format!(
                        "field: file algebra is over {}, config says {f}",
                        alg.field()
                    )));
                }
                Ok(alg)
            }
        }
    }

    /// Field-level checks plus suite/algebra compatibility.
    pub fn validate(&self, alg: &AlgebraRef) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::ConfigInvalid("trials: must be positive".into()));
        }
        if self.closure_cap == 0 {
            return Err(Error::ConfigInvalid("closure_cap: must be positive".into()));
        }
        if self.height_cap == 0 {
            return Err(Error::ConfigInvalid("height_cap: must be positive".into()));
        }
        let f = alg.field();
        if self.inject_lambda.is_some() && self.suite != Suite::TwoLocalSplit {
            return Err(Error::ConfigInvalid(
                "inject_lambda: only the two-local-split suite takes a candidate".into(),
            ));
        }
        match self.suite {
            Suite::Laws => {
                if self.exhaustive == Some(true) && f.order() != Some(2) {
                    return Err(Error::ConfigInvalid(format!(
                        "exhaustive: only GF(2) is small enough, not {f}"
                    )));
                }
            }
            Suite::LocalAut => {}
            Suite::TwoLocalSplit => {
                if !alg.is_split() {
                    return Err(Error::ConfigInvalid(
                        "suite: two-local-split needs a split-certified algebra".into(),
                    ));
                }
                if let Some(l) = self.lambda(f)? {
                    if l.is_zero() {
                        return Err(Error::ConfigInvalid(
                            "inject_lambda: must be nonzero".into(),
                        ));
                    }
                }
            }
            Suite::TwoLocalDivision => {
                if !alg.is_division() {
                    return Err(Error::ConfigInvalid(
                        "suite: two-local-division needs a division-certified algebra".into(),
                    ));
                }
            }
            Suite::Char2 => {
                if f.characteristic() != 2 {
                    return Err(Error::ConfigInvalid(format!(
                        "suite: char2 needs characteristic 2, {f} has {}",
                        f.characteristic()
                    )));
                }
            }
            Suite::Closure => {
                if !f.is_finite() {
                    return Err(Error::ConfigInvalid(
                        "suite: closure needs a finite field".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn lambda(&self, f: Field) -> Result<Option<FieldElem>> {
        self.inject_lambda
            .as_ref()
            .map(|s| f.parse_elem(s).map_err(|e| invalid("inject_lambda", e)))
            .transpose()
    }
}

fn invalid(field: &str, e: impl std::fmt::Display) -> Error {
    Error::ConfigInvalid(format!("{field}: {e}"))
}

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cocycle::{builtin_cocycle_cyclic, CocycleEntry, CocycleFile};
use crate::cyclotomic::{lcm, ScalarInput};
use crate::group::{check_quadratic_form, Bicharacter, FiniteAbelianGroup, GroupSpec};

use super::builders::{double_rep, pointed_rep, ty_rep, ty_rep_strands};
use super::matrix::Matrix;
use super::RepError;

/// Description of a representation in input files, tagged by `"family"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum RepSpec {
    /// Braiding given either as the full table `c` or as a `gram` matrix on
    /// the generators of `A`.
    Pointed {
        #[serde(rename = "A")]
        a: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<Vec<Vec<ScalarInput>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gram: Option<Vec<Vec<ScalarInput>>>,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        conductor: Option<u32>,
    },
    Double {
        group: GroupSpec,
        #[serde(default)]
        alpha: AlphaSpec,
        x: usize,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        conductor: Option<u32>,
    },
    /// `chi` is the gram matrix of the bicharacter; when omitted it is
    /// recovered from `q`.
    Ty {
        #[serde(rename = "A")]
        a: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        chi: Option<Vec<Vec<ScalarInput>>>,
        q: Vec<ScalarInput>,
        #[serde(default = "one_i8")]
        tau_sign: i8,
        #[serde(default)]
        delta_choice: u8,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        strands: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        conductor: Option<u32>,
    },
}

fn one_i8() -> i8 {
    1
}

/// The cocycle of a double: a builtin class on a cyclic group, or explicit
/// table entries with omitted entries equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Builtin { builtin_j: i64 },
    Table {
        #[serde(default)]
        values: Vec<CocycleEntry>,
    },
}

impl Default for AlphaSpec {
    fn default() -> Self {
        AlphaSpec::Table { values: Vec::new() }
    }
}

/// A built representation together with the `RepSpec` that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    pub spec: RepSpec,
    pub strands: usize,
    pub conductor: u32,
    #[serde(default)]
    pub info: BTreeMap<String, String>,
    pub generators: Vec<Matrix>,
}

pub type BuiltRep = RepFile;

fn roots(v: &[ScalarInput], what: &str) -> Result<Vec<crate::cyclotomic::RootOfUnity>, RepError> {
    v.iter()
        .enumerate()
        .map(|(k, s)| {
            s.to_root()
                .map_err(|e| RepError::Parameter(format!("{what}[{k}]: {e}")))
        })
        .collect()
}

fn root_table(t: &[Vec<ScalarInput>], what: &str) -> Result<Vec<Vec<crate::cyclotomic::RootOfUnity>>, RepError> {
    t.iter()
        .enumerate()
        .map(|(k, row)| roots(row, &format!("{what}[{k}]")))
        .collect()
}

impl RepSpec {
    pub fn family(&self) -> &'static str {
        match self {
            RepSpec::Pointed { .. } => "pointed",
            RepSpec::Double { .. } => "double",
            RepSpec::Ty { .. } => "ty",
        }
    }

    fn conductor_override(&self) -> Option<u32> {
        match self {
            RepSpec::Pointed { conductor, .. } | RepSpec::Double { conductor, .. } | RepSpec::Ty { conductor, .. } => {
                *conductor
            }
        }
    }

    /// Group order used for the default scalar bound `|G|·D^{n+2}` with `D = 1`.
    /// The Tambara–Yamagami family has no such bound; it defaults to the
    /// number of roots of unity in the working field.
    pub fn default_scalar_bound(&self, conductor: u32) -> Result<u64, RepError> {
        Ok(match self {
            RepSpec::Pointed { a, .. } => FiniteAbelianGroup::new(a)?.order() as u64,
            RepSpec::Double { group, .. } => group.build()?.order() as u64,
            RepSpec::Ty { .. } => lcm(2, conductor) as u64,
        })
    }

    /// Validate the parameters and build the generators.
    pub fn build(&self) -> Result<BuiltRep, RepError> {
        let mut info = BTreeMap::new();
        let (strands, generators) = match self {
            RepSpec::Pointed { a, c, gram, n, .. } => {
                let group = FiniteAbelianGroup::new(a)?;
                let table = match (c, gram) {
                    (Some(c), None) => root_table(c, "c")?,
                    (None, Some(g)) => {
                        let chi = Bicharacter::bimultiplicative_from_gram(&group, root_table(g, "gram")?)?;
                        group
                            .elements()
                            .map(|x| group.elements().map(|y| chi.value(x, y)).collect())
                            .collect()
                    }
                    _ => return Err(RepError::Parameter("give exactly one of `c` and `gram`".into())),
                };
                let gens = pointed_rep(&group, &table, *n)?;
                (*n, gens.into_iter().map(Matrix::Monomial).collect::<Vec<_>>())
            }
            RepSpec::Double { group, alpha, x, n, .. } => {
                let cocycle = match alpha {
                    AlphaSpec::Builtin { builtin_j } => match group {
                        GroupSpec::Cyclic { k } => builtin_cocycle_cyclic(*k, *builtin_j)?,
                        _ => return Err(RepError::Parameter("builtin_j needs a cyclic group".into())),
                    },
                    AlphaSpec::Table { values } => CocycleFile {
                        group: group.clone(),
                        values: values.clone(),
                    }
                    .to_cocycle()?,
                };
                let gens = double_rep(&cocycle, *x, *n)?;
                (*n, gens.into_iter().map(Matrix::Monomial).collect())
            }
            RepSpec::Ty {
                a,
                chi,
                q,
                tau_sign,
                delta_choice,
                m,
                strands,
                ..
            } => {
                let group = FiniteAbelianGroup::new(a)?;
                let qv = roots(q, "q")?;
                let chi = match chi {
                    Some(g) => Bicharacter::from_gram(&group, root_table(g, "chi")?)?,
                    None => Bicharacter::from_quadratic_values(&group, &qv)?,
                };
                let report = check_quadratic_form(&group, &chi, &qv)?;
                let form = match report.form {
                    Some(f) => Arc::new(f),
                    None => {
                        let why = if let Some(&(x, y)) = report.functional_failures.first() {
                            format!("q(a+b)χ(a,b) ≠ q(a)q(b) at (a, b) = ({x}, {y})")
                        } else if let Some(&x) = report.evenness_failures.first() {
                            format!("q({x}) ≠ q(−{x})")
                        } else if !report.chi_symmetric {
                            "χ is not symmetric".to_string()
                        } else {
                            "χ is degenerate".to_string()
                        };
                        return Err(RepError::Parameter(why));
                    }
                };
                let built = match (m, strands) {
                    (Some(m), None) => {
                        if *m == 0 {
                            return Err(RepError::Parameter("m must be at least 1".into()));
                        }
                        let r = ty_rep(&form, *tau_sign, *delta_choice, *m)?;
                        (2 * m + 1, r)
                    }
                    (m, Some(s)) => {
                        if m.is_some_and(|m| m != s / 2) {
                            return Err(RepError::Parameter(format!("m = {} does not match {s} strands", m.unwrap())));
                        }
                        (*s, ty_rep_strands(&form, *tau_sign, *delta_choice, *s)?)
                    }
                    (None, None) => return Err(RepError::Parameter("give `m` or `strands`".into())),
                };
                let (s, r) = built;
                info.insert("tau".into(), r.tau.to_string());
                info.insert("delta_squared".into(), r.delta_squared.to_string());
                info.insert("delta".into(), r.delta.to_string());
                (s, r.generators.into_iter().map(Matrix::Dense).collect())
            }
        };
        let natural = generators.iter().fold(1, |acc, g: &Matrix| lcm(acc, g.conductor()));
        let conductor = match self.conductor_override() {
            None => natural,
            Some(n) if n > 0 && n % natural == 0 => n,
            Some(n) => {
                return Err(RepError::Parameter(format!(
                    "conductor {n} is not a multiple of the required conductor {natural}"
                )))
            }
        };
        let generators = generators
            .into_iter()
            .map(|g| match g {
                Matrix::Dense(d) => d.coerce(conductor).map(Matrix::Dense),
                m => Ok(m),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RepFile {
            spec: self.clone(),
            strands,
            conductor,
            info,
            generators,
        })
    }
}

impl RepFile {
    /// Structural checks after loading from disk.
    pub fn validate(&self) -> Result<(), RepError> {
        if self.strands < 2 || self.generators.len() != self.strands - 1 {
            return Err(RepError::Parameter(format!(
                "{} generators for {} strands",
                self.generators.len(),
                self.strands
            )));
        }
        let dim = self.generators[0].dim();
        if self.generators.iter().any(|g| g.dim() != dim) {
            return Err(RepError::Dimension("generators have different dimensions".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ty_spec_from_json() {
        let spec: RepSpec =
            serde_json::from_str(r#"{"family":"ty","A":[2],"q":["1","i"],"tau_sign":1,"delta_choice":0,"m":1}"#).unwrap();
        let built = spec.build().unwrap();
        assert_eq!(built.strands, 3);
        assert_eq!(built.generators.len(), 2);
        assert_eq!(built.conductor, 16);
    }

    #[test]
    fn ty_rejects_m_zero() {
        let spec: RepSpec = serde_json::from_str(r#"{"family":"ty","A":[2],"q":["1","i"],"m":0}"#).unwrap();
        assert!(matches!(spec.build(), Err(RepError::Parameter(_))));
    }

    #[test]
    fn ty_rejects_non_even_q() {
        let spec: RepSpec = serde_json::from_str(r#"{"family":"ty","A":[3],"q":["1","z3","z3^2"],"m":1}"#).unwrap();
        assert!(spec.build().is_err());
    }

    #[test]
    fn double_builtin_and_table_agree() {
        let a: RepSpec =
            serde_json::from_str(r#"{"family":"double","group":{"kind":"cyclic","k":2},"alpha":{"builtin_j":1},"x":1,"n":3}"#)
                .unwrap();
        let b: RepSpec = serde_json::from_str(
            r#"{"family":"double","group":{"kind":"cyclic","k":2},"alpha":{"values":[{"g":[1,1,1],"scalar":"-1"}]},"x":1,"n":3}"#,
        )
        .unwrap();
        assert_eq!(a.build().unwrap().generators, b.build().unwrap().generators);
    }

    #[test]
    fn pointed_gram_and_table_agree() {
        let a: RepSpec = serde_json::from_str(r#"{"family":"pointed","A":[2],"gram":[["-1"]],"n":3}"#).unwrap();
        let b: RepSpec = serde_json::from_str(r#"{"family":"pointed","A":[2],"c":[["1","1"],["1","-1"]],"n":3}"#).unwrap();
        assert_eq!(a.build().unwrap().generators, b.build().unwrap().generators);
    }

    #[test]
    fn file_round_trip() {
        let spec: RepSpec = serde_json::from_str(r#"{"family":"ty","A":[3],"q":["1","z3","z3"],"m":1}"#).unwrap();
        let built = spec.build().unwrap();
        let text = serde_json::to_string(&built).unwrap();
        let back: RepFile = serde_json::from_str(&text).unwrap();
        back.validate().unwrap();
        assert_eq!(back, built);
    }

    #[test]
    fn conductor_override() {
        let spec: RepSpec =
            serde_json::from_str(r#"{"family":"ty","A":[2],"q":["1","i"],"m":1,"conductor":48}"#).unwrap();
        assert_eq!(spec.build().unwrap().conductor, 48);
        let bad: RepSpec = serde_json::from_str(r#"{"family":"ty","A":[2],"q":["1","i"],"m":1,"conductor":12}"#).unwrap();
        assert!(bad.build().is_err());
    }
}

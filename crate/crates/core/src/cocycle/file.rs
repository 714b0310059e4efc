use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::ScalarInput;
use crate::group::{FiniteGroup, GroupSpec};

use super::{require_cocycle, Cochain2, Cochain3, CocycleError};

/// On-disk 3-cochain. Entries that are omitted default to 1.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CocycleFile {
    pub group: GroupSpec,
    #[serde(default)]
    pub values: Vec<CocycleEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CocycleEntry {
    pub g: [usize; 3],
    pub scalar: ScalarInput,
}

/// On-disk 2-cochain, same conventions as [`CocycleFile`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Cochain2File {
    pub group: GroupSpec,
    #[serde(default)]
    pub values: Vec<Cochain2Entry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Cochain2Entry {
    pub g: [usize; 2],
    pub scalar: ScalarInput,
}

impl CocycleFile {
    /// Build the table without checking the cocycle condition.
    pub fn to_cochain(&self) -> Result<Cochain3, CocycleError> {
        let group = Arc::new(self.group.build()?);
        let mut alpha = Cochain3::trivial(group.clone());
        for (k, e) in self.values.iter().enumerate() {
            if e.g.iter().any(|&x| x >= group.order()) {
                return Err(CocycleError::Entry(format!("values[{k}].g = {:?} is out of range", e.g)));
            }
            let v = e
                .scalar
                .to_root()
                .map_err(|err| CocycleError::Entry(format!("values[{k}].scalar: {err}")))?;
            alpha.set(e.g[0], e.g[1], e.g[2], v);
        }
        Ok(alpha)
    }

    /// Build the table and require `dα = 1`.
    pub fn to_cocycle(&self) -> Result<Cochain3, CocycleError> {
        let alpha = self.to_cochain()?;
        require_cocycle(&alpha)?;
        Ok(alpha)
    }

    pub fn from_cochain(group: GroupSpec, alpha: &Cochain3) -> Self {
        let n = alpha.group().order();
        let mut values = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = alpha.get(a, b, c);
                    if !v.is_one() {
                        values.push(CocycleEntry {
                            g: [a, b, c],
                            scalar: ScalarInput::from_root(v),
                        });
                    }
                }
            }
        }
        CocycleFile { group, values }
    }
}

impl Cochain2File {
    pub fn to_cochain(&self) -> Result<Cochain2, CocycleError> {
        let group: Arc<FiniteGroup> = Arc::new(self.group.build()?);
        let mut r = Cochain2::trivial(group.clone());
        for (k, e) in self.values.iter().enumerate() {
            if e.g.iter().any(|&x| x >= group.order()) {
                return Err(CocycleError::Entry(format!("values[{k}].g = {:?} is out of range", e.g)));
            }
            let v = e
                .scalar
                .to_root()
                .map_err(|err| CocycleError::Entry(format!("values[{k}].scalar: {err}")))?;
            r.set(e.g[0], e.g[1], v);
        }
        Ok(r)
    }

    pub fn from_cochain(group: GroupSpec, r: &Cochain2) -> Self {
        let n = r.group().order();
        let values = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !r.get(a, b).is_one())
            .map(|(a, b)| Cochain2Entry {
                g: [a, b],
                scalar: ScalarInput::from_root(r.get(a, b)),
            })
            .collect();
        Cochain2File { group, values }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::builtin_cocycle_cyclic;

    #[test]
    fn round_trip() {
        let alpha = builtin_cocycle_cyclic(4, 1).unwrap();
        let file = CocycleFile::from_cochain(GroupSpec::Cyclic { k: 4 }, &alpha);
        let text = serde_json::to_string(&file).unwrap();
        let back: CocycleFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_cocycle().unwrap(), alpha);
    }

    #[test]
    fn omitted_entries_are_one() {
        let file: CocycleFile = serde_json::from_str(
            r#"{"group":{"kind":"cyclic","k":2},"values":[{"g":[1,1,1],"scalar":"-1"}]}"#,
        )
        .unwrap();
        assert_eq!(file.to_cocycle().unwrap(), builtin_cocycle_cyclic(2, 1).unwrap());
    }

    #[test]
    fn rejection_names_a_quadruple() {
        let file: CocycleFile = serde_json::from_str(
            r#"{"group":{"kind":"cyclic","k":2},"values":[{"g":[0,1,1],"scalar":"-1"}]}"#,
        )
        .unwrap();
        let err = file.to_cocycle().unwrap_err();
        assert!(matches!(err, CocycleError::NotACocycle(_)));
        assert!(err.to_string().contains('['));
    }

    #[test]
    fn out_of_range_entry() {
        let file: CocycleFile = serde_json::from_str(
            r#"{"group":{"kind":"cyclic","k":2},"values":[{"g":[0,2,1],"scalar":"-1"}]}"#,
        )
        .unwrap();
        assert!(matches!(file.to_cochain(), Err(CocycleError::Entry(_))));
    }
}

use std::fs;
use std::path::Path;
use std::str::FromStr;

use braidcat::cyclotomic::ScalarInput;
use braidcat::group::GroupSpec;
use serde::de::DeserializeOwned;

/// Read and deserialize a JSON file, locating failures by path, line and column.
pub fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// A root of unity in shorthand: `1`, `-1`, `i`, `z8^3`, `e(3/8)`.
pub fn scalar(s: &str) -> Result<ScalarInput, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty scalar".into());
    }
    let v = ScalarInput::Root(t.to_string());
    v.to_root().map_err(|e| format!("`{t}`: {e}"))?;
    Ok(v)
}

/// A table of roots of unity, rows separated by `;` and entries by `,`: `1,1;1,-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarTable(pub Vec<Vec<ScalarInput>>);

impl FromStr for ScalarTable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(';')
            .map(|row| row.split(',').map(scalar).collect())
            .collect::<Result<_, _>>()
            .map(ScalarTable)
    }
}

/// `cyclic:4`, `dihedral:4`, `symmetric:3`, a product such as `cyclic:2*cyclic:2`,
/// inline JSON, or a path to a JSON group file.
pub fn group_spec(s: &str) -> Result<GroupSpec, String> {
    let s = s.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| format!("group JSON: {e}"));
    }
    if s.ends_with(".json") {
        return load_json(Path::new(s));
    }
    let factors: Vec<GroupSpec> = s.split('*').map(simple_group).collect::<Result<_, _>>()?;
    Ok(if factors.len() == 1 {
        factors.into_iter().next().unwrap()
    } else {
        GroupSpec::Product { factors }
    })
}

fn simple_group(s: &str) -> Result<GroupSpec, String> {
    let (kind, k) = s
        .trim()
        .split_once(':')
        .ok_or_else(|| format!("group `{s}`: expected kind:k"))?;
    let k: usize = k.parse().map_err(|e| format!("group `{s}`: {e}"))?;
    match kind {
        "cyclic" => Ok(GroupSpec::Cyclic { k }),
        "dihedral" => Ok(GroupSpec::Dihedral { k }),
        "symmetric" => Ok(GroupSpec::Symmetric { k }),
        _ => Err(format!("group `{s}`: unknown kind `{kind}`")),
    }
}

//! JSON description of a group: moduli of `A` and `C` plus a cocycle given
//! as a bilinear matrix, an explicit table, or a catalog name.
//!
//! ```json
//! {"A": [3], "C": [3, 3], "psi": {"kind": "bilinear", "matrix": [[0, 1], [0, 0]]}}
//! ```

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::abelian::FinAbGroup;
use crate::cocycle::{Cocycle, CocycleError};
use crate::nilgroup::{Catalog, Class2Group, GroupError};
use crate::AbElement;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u64>>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<u64>>,
    pub psi: PsiSpec,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub strict_center: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PsiSpec {
    /// `kC × kC × kA` integers, or `kC × kC` when `A` is cyclic.
    Bilinear { matrix: Value },
    /// One `A`-coordinate tuple per pair `(c1, c2)`, `c1` outer, in
    /// enumeration order of `C` (first coordinate fastest).
    Table { entries: Vec<Vec<u64>> },
    /// A built-in group, e.g. `{"name": "heisenberg", "params": [5]}` or
    /// `{"name": "product(heisenberg:3,abelian:[3])"}`.
    Catalog {
        name: String,
        #[serde(default)]
        params: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("invalid group spec at {path}: {message}")]
    Shape { path: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl From<CocycleError> for SpecError {
    fn from(e: CocycleError) -> Self {
        SpecError::Group(GroupError::Cocycle(e))
    }
}

fn shape(path: &str, message: impl Into<String>) -> SpecError {
    SpecError::Shape { path: path.to_string(), message: message.into() }
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Exports a group as an explicit table of its centered cocycle, which
    /// reproduces the same multiplication on the same pairs.
    pub fn from_group(group: &Class2Group) -> Self {
        GroupSpec {
            a: Some(group.a().moduli().to_vec()),
            c: Some(group.c().moduli().to_vec()),
            psi: PsiSpec::Table { entries: group.psi().entries().into_iter().map(AbElement::into_coords).collect() },
            strict_center: group.strict_center(),
        }
    }

    pub fn catalog(entry: &Catalog) -> Self {
        GroupSpec {
            a: None,
            c: None,
            psi: PsiSpec::Catalog { name: entry.to_string(), params: vec![] },
            strict_center: false,
        }
    }

    /// Builds the cocycle without validating the cocycle identity.
    pub fn cocycle(&self) -> Result<Cocycle, SpecError> {
        if let PsiSpec::Catalog { name, params } = &self.psi {
            let full = if params.is_empty() {
                name.clone()
            } else {
                let p: Vec<String> = params.iter().map(u64::to_string).collect();
                match name.as_str() {
                    "abelian" => format!("abelian:[{}]", p.join(",")),
                    _ => format!("{name}:{}", p.join(":")),
                }
            };
            let psi = Catalog::parse(&full)?.cocycle()?;
            if let Some(a) = &self.a {
                if a.as_slice() != psi.a().moduli() {
                    return Err(shape("A", format!("catalog group has A = {:?}", psi.a().moduli())));
                }
            }
            if let Some(c) = &self.c {
                if c.as_slice() != psi.c().moduli() {
                    return Err(shape("C", format!("catalog group has C = {:?}", psi.c().moduli())));
                }
            }
            return Ok(psi);
        }

        let a = FinAbGroup::new(self.a.clone().ok_or_else(|| shape("A", "missing"))?).map_err(CocycleError::from)?;
        let c = FinAbGroup::new(self.c.clone().ok_or_else(|| shape("C", "missing"))?).map_err(CocycleError::from)?;
        match &self.psi {
            PsiSpec::Bilinear { matrix } => Ok(Cocycle::from_bilinear(&c, &a, &bilinear_matrix(matrix, &a, &c)?)?),
            PsiSpec::Table { entries } => {
                let expected = c.size() * c.size();
                if entries.len() != expected {
                    return Err(shape("psi.entries", format!("expected {expected} entries, got {}", entries.len())));
                }
                let elems = entries
                    .iter()
                    .enumerate()
                    .map(|(i, e)| a.element(e).map_err(|err| shape(&format!("psi.entries[{i}]"), err.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Cocycle::from_entries_unchecked(c, a, elems)?)
            }
            PsiSpec::Catalog { .. } => unreachable!("handled above"),
        }
    }

    /// The validated group; with `strict_center`, also requires the center
    /// to be exactly `A`.
    pub fn build(&self) -> Result<Class2Group, SpecError> {
        let psi = self.cocycle()?;
        let group = if self.strict_center { Class2Group::new_strict(psi)? } else { Class2Group::new(psi)? };
        Ok(group)
    }
}

fn bilinear_matrix(value: &Value, a: &FinAbGroup, c: &FinAbGroup) -> Result<Vec<Vec<Vec<i64>>>, SpecError> {
    let (kc, ka) = (c.rank(), a.rank());
    let rows = value.as_array().ok_or_else(|| shape("psi.matrix", "expected an array"))?;
    if rows.len() != kc {
        return Err(shape("psi.matrix", format!("expected {kc} rows, got {}", rows.len())));
    }
    let mut out = Vec::with_capacity(kc);
    for (i, row) in rows.iter().enumerate() {
        let path = format!("psi.matrix[{i}]");
        let row = row.as_array().ok_or_else(|| shape(&path, "expected an array"))?;
        if row.len() != kc {
            return Err(shape(&path, format!("expected {kc} entries, got {}", row.len())));
        }
        let mut out_row = Vec::with_capacity(kc);
        for (j, cell) in row.iter().enumerate() {
            let path = format!("psi.matrix[{i}][{j}]");
            let v: Vec<i64> = match cell {
                Value::Number(n) if ka == 1 => vec![n.as_i64().ok_or_else(|| shape(&path, "expected an integer"))?],
                Value::Array(xs) if xs.len() == ka => xs
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| shape(&path, "expected an integer")))
                    .collect::<Result<_, _>>()?,
                _ => return Err(shape(&path, format!("expected {ka} integer(s)"))),
            };
            out_row.push(v);
        }
        out.push(out_row);
    }
    Ok(out)
}

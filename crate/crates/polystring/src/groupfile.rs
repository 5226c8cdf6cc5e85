//! JSON group definitions.
//!
//! A permutation group lists generators in 1-based cycle notation; a matrix
//! group lists each generator as its row-major entries, every entry being a
//! field-element index (see [`FieldContext::from_index`]). The schema is
//! documented in `docs/groupfile.md`.

use std::rc::Rc;

use polystring_core::cstring::CString;
use polystring_core::engine::{BlockAction, FiniteGroup, Perm, VectorAction};
use polystring_core::ff::FieldContext;
use polystring_core::linalg::GfMatrix;
use polystring_core::Caps;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Permutation,
    Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
}

/// Cycle notation for permutations, entry indices for matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Cycles(String),
    Entries(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalSpec {
    pub generators: Vec<GeneratorSpec>,
    /// Known upper bound on the subgroup order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    pub generators: Vec<GeneratorSpec>,
    /// Indices into `generators`, counted from 0; all of them when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cstring: Option<Vec<usize>>,
    /// Known upper bound on the group order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<u128>,
    /// Proper nontrivial normal subgroups; computed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_subgroups: Option<Vec<NormalSpec>>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::GroupFile(e.to_string()))
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::GroupFile(m) => CliError::GroupFile(format!("{path}: {m}")),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("group files serialize");
        s.push('\n');
        s
    }

    pub fn permutations(name: Option<String>, degree: usize, gens: &[Perm]) -> Self {
        Self {
            name,
            kind: GroupKind::Permutation,
            degree: Some(degree),
            field: None,
            dimension: None,
            generators: gens.iter().map(|p| GeneratorSpec::Cycles(p.to_cycle_string())).collect(),
            cstring: None,
            order: None,
            normal_subgroups: None,
        }
    }

    pub fn matrices(name: Option<String>, ctx: &FieldContext, gens: &[GfMatrix]) -> Self {
        Self {
            name,
            kind: GroupKind::Matrix,
            degree: None,
            field: Some(FieldSpec {
                p: ctx.characteristic(),
                k: ctx.degree(),
            }),
            dimension: gens.first().map(GfMatrix::dim),
            generators: gens.iter().map(|m| matrix_spec(ctx, m)).collect(),
            cstring: None,
            order: None,
            normal_subgroups: None,
        }
    }
}

pub fn matrix_spec(ctx: &FieldContext, m: &GfMatrix) -> GeneratorSpec {
    GeneratorSpec::Entries(m.entries().iter().map(|e| ctx.index_of(e)).collect())
}

enum Action {
    Block(BlockAction),
    Vector(VectorAction),
}

impl Action {
    fn degree(&self) -> usize {
        match self {
            Action::Block(a) => a.degree(),
            Action::Vector(a) => a.degree(),
        }
    }

    fn perm(&self, m: &GfMatrix) -> Result<Perm, CliError> {
        Ok(match self {
            Action::Block(a) => a.perm_of(m)?,
            Action::Vector(a) => a.perm_of(m)?,
        })
    }
}

/// Converts generator specs to permutations of a common degree.
struct Decoder {
    degree: usize,
    matrix: Option<(FieldContext, usize, Action)>,
}

impl Decoder {
    fn new(file: &GroupFile) -> Result<Self, CliError> {
        match file.kind {
            GroupKind::Permutation => {
                let degree = file
                    .degree
                    .ok_or_else(|| CliError::GroupFile("permutation groups need `degree`".into()))?;
                if file.field.is_some() || file.dimension.is_some() {
                    return Err(CliError::GroupFile(
                        "`field` and `dimension` only apply to matrix groups".into(),
                    ));
                }
                Ok(Self { degree, matrix: None })
            }
            GroupKind::Matrix => {
                let field = file
                    .field
                    .ok_or_else(|| CliError::GroupFile("matrix groups need `field`".into()))?;
                let dim = file
                    .dimension
                    .ok_or_else(|| CliError::GroupFile("matrix groups need `dimension`".into()))?;
                if dim == 0 {
                    return Err(CliError::GroupFile("`dimension` must be positive".into()));
                }
                let ctx = FieldContext::new(field.p, field.k)?;
                let mut all: Vec<&GeneratorSpec> = file.generators.iter().collect();
                for n in file.normal_subgroups.iter().flatten() {
                    all.extend(&n.generators);
                }
                let mats = all
                    .into_iter()
                    .map(|g| decode_matrix(&ctx, dim, g))
                    .collect::<Result<Vec<_>, _>>()?;
                let block = dim % 2 == 0
                    && mats.iter().all(GfMatrix::is_block_shaped);
                let action = if block {
                    Action::Block(BlockAction::new(&ctx, dim)?)
                } else {
                    Action::Vector(VectorAction::new(&ctx, dim)?)
                };
                if let Some(d) = file.degree {
                    if d != action.degree() {
                        return Err(CliError::GroupFile(format!(
                            "`degree` {d} does not match the {} points of the matrix action",
                            action.degree()
                        )));
                    }
                }
                Ok(Self {
                    degree: action.degree(),
                    matrix: Some((ctx, dim, action)),
                })
            }
        }
    }

    fn perm(&self, spec: &GeneratorSpec) -> Result<Perm, CliError> {
        match (&self.matrix, spec) {
            (None, GeneratorSpec::Cycles(text)) => Perm::parse_cycles(self.degree, text)
                .map_err(|e| CliError::GroupFile(format!("generator `{text}`: {e}"))),
            (Some((ctx, dim, action)), spec) => {
                let m = decode_matrix(ctx, *dim, spec)?;
                if m.det().is_zero() {
                    return Err(CliError::GroupFile("singular matrix generator".into()));
                }
                action.perm(&m)
            }
            (None, GeneratorSpec::Entries(_)) => Err(CliError::GroupFile(
                "permutation generators must be cycle strings".into(),
            )),
        }
    }
}

fn decode_matrix(ctx: &FieldContext, dim: usize, spec: &GeneratorSpec) -> Result<GfMatrix, CliError> {
    let GeneratorSpec::Entries(entries) = spec else {
        return Err(CliError::GroupFile("matrix generators must be entry lists".into()));
    };
    if entries.len() != dim * dim {
        return Err(CliError::GroupFile(format!(
            "matrix generator has {} entries, expected {}",
            entries.len(),
            dim * dim
        )));
    }
    if let Some(&bad) = entries.iter().find(|&&e| e >= ctx.size()) {
        return Err(CliError::GroupFile(format!(
            "entry {bad} is not an element index of GF({})",
            ctx.size()
        )));
    }
    Ok(GfMatrix::from_entries(
        ctx,
        entries.iter().map(|&e| ctx.from_index(e)).collect(),
    ))
}

/// A parsed group file with its certified group.
pub struct LoadedGroup {
    pub file: GroupFile,
    pub group: Rc<FiniteGroup>,
    pub generators: Vec<Perm>,
    /// Indices of the string generators.
    pub cstring: Vec<usize>,
    /// Normal subgroups listed in the file.
    pub normals: Option<Vec<FiniteGroup>>,
    /// Whether every listed normal subgroup really is normal.
    pub normals_valid: bool,
}

impl LoadedGroup {
    pub fn load(file: GroupFile) -> Result<Self, CliError> {
        if file.generators.is_empty() {
            return Err(CliError::GroupFile("no generators".into()));
        }
        let dec = Decoder::new(&file)?;
        let generators = file
            .generators
            .iter()
            .map(|g| dec.perm(g))
            .collect::<Result<Vec<_>, _>>()?;
        let group = match file.order {
            Some(n) => FiniteGroup::with_known_order(dec.degree, generators.clone(), n)?,
            None => FiniteGroup::new(dec.degree, generators.clone())?,
        };
        if !group.is_certified() {
            return Err(CliError::Uncertified);
        }
        let cstring = match &file.cstring {
            Some(ix) => {
                if let Some(&bad) = ix.iter().find(|&&i| i >= generators.len()) {
                    return Err(CliError::GroupFile(format!("cstring index {bad} out of range")));
                }
                ix.clone()
            }
            None => (0..generators.len()).collect(),
        };
        if cstring.is_empty() {
            return Err(CliError::GroupFile("cstring is empty".into()));
        }
        let normals = match &file.normal_subgroups {
            None => None,
            Some(specs) => {
                let mut out = Vec::with_capacity(specs.len());
                for spec in specs {
                    let gens = spec
                        .generators
                        .iter()
                        .map(|g| dec.perm(g))
                        .collect::<Result<Vec<_>, _>>()?;
                    for x in &gens {
                        if !group.contains(x)? {
                            return Err(CliError::GroupFile(
                                "normal subgroup generator is not in the group".into(),
                            ));
                        }
                    }
                    let n = match spec.order {
                        Some(b) => group.subgroup_with_order_bound(gens, b)?,
                        None => group.subgroup(gens)?,
                    };
                    if !n.is_certified() {
                        return Err(CliError::Uncertified);
                    }
                    out.push(n);
                }
                Some(out)
            }
        };
        let normals_valid = normals.iter().flatten().all(|n| {
            group
                .generators()
                .iter()
                .all(|s| n.generators().iter().all(|x| n.contains(&x.conjugate_by(s)).unwrap_or(false)))
        });
        Ok(Self {
            file,
            group: Rc::new(group),
            generators,
            cstring,
            normals,
            normals_valid,
        })
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        Self::load(GroupFile::read(path)?)
    }

    pub fn string_generators(&self) -> Vec<Perm> {
        self.cstring.iter().map(|&i| self.generators[i].clone()).collect()
    }

    pub fn cstring(&self, caps: Caps) -> Result<CString, CliError> {
        Ok(CString::with_caps(self.group.clone(), self.string_generators(), caps)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_file_round_trip() {
        let text = r#"{"kind":"permutation","degree":4,"generators":["(1,2)","(2,3)","(3,4)"],"cstring":[0,1,2]}"#;
        let f = GroupFile::from_json(text).unwrap();
        let g = LoadedGroup::load(f.clone()).unwrap();
        assert_eq!(g.group.order(), 24);
        let again = GroupFile::from_json(&f.to_json()).unwrap();
        assert_eq!(again, f);
    }

    #[test]
    fn rejects_malformed_files() {
        for bad in [
            r#"{"kind":"permutation","generators":["(1,2)"]}"#,
            r#"{"kind":"permutation","degree":3,"generators":["(1,5)"]}"#,
            r#"{"kind":"matrix","field":{"p":4,"k":1},"dimension":2,"generators":[[1,0,0,1]]}"#,
            r#"{"kind":"matrix","field":{"p":3,"k":1},"dimension":2,"generators":[[1,0,0]]}"#,
            r#"{"kind":"matrix","field":{"p":3,"k":1},"dimension":2,"generators":[[1,0,0,3]]}"#,
            r#"{"kind":"permutation","degree":3,"generators":["(1,2)"],"cstring":[1]}"#,
            r#"{"kind":"permutation","degree":3,"generators":["(1,2)"],"colour":"red"}"#,
        ] {
            let r = GroupFile::from_json(bad).and_then(LoadedGroup::load);
            assert!(matches!(r, Err(CliError::GroupFile(_))), "{bad}");
        }
    }

    #[test]
    fn matrix_files_pick_an_action() {
        // GL₂(3) on the 8 nonzero vectors
        let text = r#"{"kind":"matrix","field":{"p":3,"k":1},"dimension":2,
            "generators":[[2,0,0,1],[1,1,0,1],[0,1,1,0]]}"#;
        let g = LoadedGroup::load(GroupFile::from_json(text).unwrap()).unwrap();
        assert_eq!(g.group.degree(), 8);
        assert_eq!(g.group.order(), 48);
    }

    #[test]
    fn listed_normal_subgroups_are_checked() {
        let base = r#"{"kind":"permutation","degree":4,"generators":["(1,2)","(1,2,3,4)"],"normal_subgroups":[{"generators":[NORMAL]}]}"#;
        let good = LoadedGroup::load(GroupFile::from_json(&base.replace("NORMAL", r#""(1,2)(3,4)","(1,3)(2,4)""#)).unwrap()).unwrap();
        assert!(good.normals_valid);
        let bad = LoadedGroup::load(GroupFile::from_json(&base.replace("NORMAL", r#""(1,2)""#)).unwrap()).unwrap();
        assert!(!bad.normals_valid);
    }
}

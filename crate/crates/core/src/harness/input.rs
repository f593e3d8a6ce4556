//! The JSON blocks a scenario is made of, and how they become groups and
//! modules.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::mat::Mat;
use crate::algebra::module::PresentedModule;
use crate::algebra::ring::RingSpec;
use crate::error::{Error, Result};
use crate::gmodules::GModule;
use crate::groups::{
    abelian_from_factors, alternating, cyclic, dihedral, product_of, quaternion, subgroup_generated, symmetric,
    GroupTable, Subgroup,
};
use crate::linear_groups::{build_group, MatrixGroup, MatrixKind};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RingKind {
    #[serde(alias = "Z", alias = "z")]
    Integers,
    #[serde(alias = "localized", alias = "Z[1/l]")]
    Inverted,
}

/// `{"kind": "integers"}` or `{"kind": "inverted", "l": 6}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingInput {
    pub kind: RingKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
}

impl RingInput {
    pub fn ring(&self) -> Result<RingSpec> {
        match (self.kind, self.l) {
            (RingKind::Integers, None) => Ok(RingSpec::Integers),
            (RingKind::Integers, Some(_)) => Err(Error::Input("ring kind integers takes no l".into())),
            (RingKind::Inverted, Some(l)) => RingSpec::inverted(l),
            (RingKind::Inverted, None) => Err(Error::Input("ring kind inverted needs l".into())),
        }
    }
}

impl From<RingSpec> for RingInput {
    fn from(r: RingSpec) -> Self {
        match r {
            RingSpec::Integers => RingInput { kind: RingKind::Integers, l: None },
            RingSpec::Inverted(l) => RingInput { kind: RingKind::Inverted, l: Some(l) },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixGroupSpec {
    pub kind: MatrixKind,
    pub n: usize,
    pub m: u64,
}

/// A finite group. Element numbering: `cyclic m` uses residues; a product
/// numbers `(g, h)` as `g·|H| + h`, associating to the left; a table uses its
/// rows; a matrix group puts the identity first and then sorts matrices
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(usize),
    Product(Vec<GroupSpec>),
    Table(Vec<Vec<usize>>),
    MatrixGroup(MatrixGroupSpec),
    /// `Z/d₁ × … × Z/d_k`
    Abelian(Vec<u64>),
    Symmetric(usize),
    Alternating(usize),
    /// The dihedral group of order `2n`.
    Dihedral(usize),
    Quaternion,
}

impl GroupSpec {
    pub fn build(&self, bound: usize) -> Result<GroupTable> {
        match self {
            GroupSpec::Cyclic(m) => cyclic(*m),
            GroupSpec::Product(parts) => {
                let tables = parts.iter().map(|p| p.build(bound)).collect::<Result<Vec<_>>>()?;
                let order: usize = tables.iter().map(|t| t.order()).product();
                if order > bound {
                    return Err(Error::Budget { cells: order, budget: bound });
                }
                product_of(&tables)
            }
            GroupSpec::Table(rows) => GroupTable::from_table(rows),
            GroupSpec::MatrixGroup(s) => Ok(self.matrix_group(s, bound)?.table().clone()),
            GroupSpec::Abelian(f) => abelian_from_factors(f),
            GroupSpec::Symmetric(n) => symmetric(*n),
            GroupSpec::Alternating(n) => alternating(*n),
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Quaternion => quaternion(),
        }
    }

    fn matrix_group(&self, s: &MatrixGroupSpec, bound: usize) -> Result<MatrixGroup> {
        build_group(s.n, s.m, s.kind, bound)
    }

    /// Short name used in scenario ids.
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Cyclic(m) => format!("Z{m}"),
            GroupSpec::Product(parts) => parts.iter().map(|p| p.name()).collect::<Vec<_>>().join("x"),
            GroupSpec::Table(rows) => format!("table{}", rows.len()),
            GroupSpec::MatrixGroup(s) => format!("{}{}(Z/{})", s.kind, s.n, s.m),
            GroupSpec::Abelian(f) => f.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x"),
            GroupSpec::Symmetric(n) => format!("S{n}"),
            GroupSpec::Alternating(n) => format!("A{n}"),
            GroupSpec::Dihedral(n) => format!("D{n}"),
            GroupSpec::Quaternion => "Q8".into(),
        }
    }

    pub fn from_factors(factors: &[u64]) -> Self {
        match factors {
            [m] => GroupSpec::Cyclic(*m as usize),
            _ => GroupSpec::Product(factors.iter().map(|&d| GroupSpec::Cyclic(d as usize)).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub generators: Vec<usize>,
}

impl SubgroupSpec {
    pub fn build(&self, g: &GroupTable) -> Result<Subgroup> {
        if let Some(&x) = self.generators.iter().find(|&&x| x >= g.order()) {
            return Err(Error::Input(format!("subgroup generator {x} is not an element of a group of order {}", g.order())));
        }
        subgroup_generated(g, &self.generators)
    }
}

/// `ambient_rank` generators, one relation per entry of `relations` (each a
/// vector of length `ambient_rank`), and for each key of `action` (an element
/// index) its matrix, acting on column vectors. The keys must generate the
/// group; an empty `action` means the trivial action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub ambient_rank: usize,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

fn to_mat<T: Scalar>(rows: &[Vec<i64>], cols: usize, what: &str) -> Result<Mat<T>> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::Input(format!("{what}: row of length {} where {cols} entries are expected", r.len())));
    }
    let rows: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(|&x| T::from_i64_c(x)).collect()).collect();
    Mat::from_rows(&rows, cols)
}

impl ModuleSpec {
    pub fn plain<T: Scalar>(&self, ring: RingSpec) -> Result<PresentedModule<T>> {
        let rel = to_mat::<T>(&self.relations, self.ambient_rank, "relations")?.transpose();
        let rel = if self.relations.is_empty() { Mat::zeros(self.ambient_rank, 0) } else { rel };
        PresentedModule::new(ring, rel)
    }

    pub fn build<T: Scalar>(&self, g: &GroupTable, ring: RingSpec) -> Result<GModule<T>> {
        let module = self.plain::<T>(ring)?;
        if self.action.is_empty() {
            return GModule::trivial(g, &module);
        }
        let r = self.ambient_rank;
        let mut given: Vec<(usize, Mat<T>)> = Vec::new();
        for (key, rows) in &self.action {
            let s: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("action key {key:?} is not an element index")))?;
            if s >= g.order() {
                return Err(Error::Input(format!("action key {s} is not an element of a group of order {}", g.order())));
            }
            if rows.len() != r {
                return Err(Error::Input(format!("action of {s}: {} rows where {r} are expected", rows.len())));
            }
            given.push((s, to_mat::<T>(rows, r, &format!("action of {s}"))?));
        }
        // spread the given matrices over the group, checking A(s x) = A(s) A(x)
        let mut acts: Vec<Option<Mat<T>>> = vec![None; g.order()];
        acts[0] = Some(Mat::identity(r));
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let ax = acts[x].clone().expect("visited");
            for (s, a_s) in &given {
                let y = g.mul(*s, x);
                let cand = a_s.mul(&ax)?;
                match &acts[y] {
                    None => {
                        acts[y] = Some(cand);
                        queue.push_back(y);
                    }
                    Some(ay) => {
                        if !module.is_zero_element_matrix(&cand.sub(ay)?)? {
                            return Err(Error::InvalidAction(format!(
                                "the given matrices do not define an action (two values for element {y})"
                            )));
                        }
                    }
                }
            }
        }
        if acts.iter().any(|a| a.is_none()) {
            return Err(Error::Input("the action keys do not generate the group".into()));
        }
        let gens: Vec<Mat<T>> = g.generators().iter().map(|&s| acts[s].clone().expect("all visited")).collect();
        GModule::new(g, &module, &gens)
    }
}

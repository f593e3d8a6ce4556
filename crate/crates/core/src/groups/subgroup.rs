use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::groups::{GroupHom, GroupTable};

/// A subgroup, stored as the sorted list of its elements in the parent.
/// Position `i` of `elements` is element `i` of [`Subgroup::table`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: GroupTable,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn parent(&self) -> &GroupTable {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn index_of(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    pub fn is_normal(&self) -> bool {
        let g = &self.parent;
        g.generators()
            .iter()
            .all(|&s| self.elements.iter().all(|&x| self.contains(g.conjugate(s, x))))
    }

    /// The subgroup as a group in its own right.
    pub fn table(&self) -> GroupTable {
        let n = self.order();
        let mut mult = Vec::with_capacity(n * n);
        for &a in &self.elements {
            for &b in &self.elements {
                let c = self.parent.mul(a, b);
                mult.push(self.index_of(c).expect("closed") as u32);
            }
        }
        let gens = self
            .generators
            .iter()
            .filter(|&&g| g != 0)
            .map(|&g| self.index_of(g).expect("member"))
            .collect();
        GroupTable::validated(n, mult, Some(gens), None).expect("subgroup of a valid group")
    }

    /// Inclusion of [`Subgroup::table`] into the parent.
    pub fn inclusion(&self) -> GroupHom {
        GroupHom::new(self.table(), self.parent.clone(), self.elements.clone()).expect("inclusion")
    }
}

pub fn subgroup_generated(g: &GroupTable, gens: &[usize]) -> Result<Subgroup> {
    if let Some(&bad) = gens.iter().find(|&&x| x >= g.order()) {
        return Err(Error::Input(format!("element {bad} is not in the group")));
    }
    let elements = g.generated_by(gens);
    // keep a small generating set
    let mut kept = Vec::new();
    let mut span = vec![0usize];
    for &x in gens {
        if span.binary_search(&x).is_err() {
            kept.push(x);
            span = g.generated_by(&kept);
        }
    }
    Ok(Subgroup {
        parent: g.clone(),
        elements,
        generators: kept,
    })
}

/// `G/N` with the projection. Cosets are numbered by their smallest element,
/// so the identity coset is 0.
pub fn quotient(g: &GroupTable, n: &Subgroup) -> Result<(GroupTable, GroupHom)> {
    if n.parent() != g {
        return Err(Error::Input("subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] == usize::MAX {
            let k = reps.len();
            reps.push(x);
            for &h in n.elements() {
                coset_of[g.mul(x, h)] = k;
            }
        }
    }
    let q = reps.len();
    let mut mult = Vec::with_capacity(q * q);
    for &a in &reps {
        for &b in &reps {
            mult.push(coset_of[g.mul(a, b)] as u32);
        }
    }
    let mut gens: Vec<usize> = Vec::new();
    for &s in g.generators() {
        let c = coset_of[s];
        if c != 0 && !gens.contains(&c) {
            gens.push(c);
        }
    }
    // images of the parent's generators generate the quotient
    let table = GroupTable::validated(q, mult, Some(gens), None)?;
    let proj = GroupHom::new(g.clone(), table.clone(), coset_of)?;
    Ok((table, proj))
}

/// Every subgroup of `g`, sorted by order and then by elements. Intended
/// for small groups.
pub fn all_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![vec![0usize]];
    found.insert(vec![0]);
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k = g.generated_by(&gens);
            if found.insert(k.clone()) {
                frontier.push(k);
            }
        }
    }
    let mut subs: Vec<Vec<usize>> = found.into_iter().collect();
    subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subs.into_iter()
        .map(|els| {
            let gens: Vec<usize> = els.iter().copied().filter(|&x| x != 0).collect();
            subgroup_generated(g, &gens).expect("valid elements")
        })
        .collect()
}

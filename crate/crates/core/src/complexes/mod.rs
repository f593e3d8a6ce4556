//! Complexes of finitely presented modules with sparse differentials.
//!
//! Every degree carries an ambient free module `R^{r_k}` plus a list of
//! diagonal relations `f · e_i`, so a degree is `⊕ R/f_i ⊕ R^free`. This is
//! exactly the shape of `C_k ⊗ M` when `M` is in normal form. Differentials
//! are integer matrices that map relations into relations, and `d ∘ d`
//! vanishes modulo the target relations.

mod homology;
mod resolutions;

pub use homology::{homology, induced_on_homology, HomologySummary};
pub use resolutions::{
    bar_complex, bar_map, blockwise_map, cobar_complex, cobar_map, periodic_complex, product_complex,
    BarIndex, ProductIndex,
};

use crate::algebra::lattice::{axpy, SparseVec};
use crate::algebra::mat::{compress, SparseMat};
use crate::algebra::ring::RingSpec;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `d_k : C_k → C_{k−1}`
    Chain,
    /// `δ^k : C^k → C^{k+1}`
    Cochain,
}

/// Degrees `0..=top`. `maps[k]` joins degrees `k` and `k + 1`, in the
/// direction given by the orientation.
#[derive(Clone, Debug)]
pub struct ChainComplex<T> {
    ring: RingSpec,
    orientation: Orientation,
    ranks: Vec<usize>,
    relations: Vec<Vec<(usize, T)>>,
    maps: Vec<SparseMat<T>>,
}

impl<T: Scalar> ChainComplex<T> {
    /// Validates shapes, relations and `d ∘ d = 0`.
    pub fn new(
        ring: RingSpec,
        orientation: Orientation,
        ranks: Vec<usize>,
        relations: Vec<Vec<(usize, T)>>,
        maps: Vec<SparseMat<T>>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Dimension("a complex needs at least one degree".into()));
        }
        if relations.len() != ranks.len() || maps.len() + 1 != ranks.len() {
            return Err(Error::Dimension("degree count mismatch".into()));
        }
        for (k, rels) in relations.iter().enumerate() {
            let mut seen = vec![false; ranks[k]];
            for (i, f) in rels {
                if *i >= ranks[k] || seen[*i] || f <= &T::one() {
                    return Err(Error::Input(format!("bad relation at degree {k}, index {i}")));
                }
                seen[*i] = true;
            }
        }
        let c = ChainComplex {
            ring,
            orientation,
            ranks,
            relations,
            maps,
        };
        for k in 0..c.maps.len() {
            let (from, to) = c.link(k);
            let m = &c.maps[k];
            if m.cols() != c.ranks[from] || m.rows != c.ranks[to] {
                return Err(Error::Dimension(format!("differential {k} has the wrong shape")));
            }
            if m.columns.iter().any(|col| col.windows(2).any(|w| w[0].0 >= w[1].0)) {
                return Err(Error::Input("sparse columns must be sorted".into()));
            }
            c.check_relations_preserved(m, from, to)?;
        }
        for k in 0..c.maps.len().saturating_sub(1) {
            let (first, second) = match c.orientation {
                Orientation::Chain => (&c.maps[k + 1], &c.maps[k]),
                Orientation::Cochain => (&c.maps[k], &c.maps[k + 1]),
            };
            let dd = second.mul(first)?;
            let to = match c.orientation {
                Orientation::Chain => k,
                Orientation::Cochain => k + 2,
            };
            if !c.vanishes_mod(&dd, to) {
                return Err(Error::BrokenComplex(format!("d∘d ≠ 0 through degree {}", k + 1)));
            }
        }
        Ok(c)
    }

    /// A complex of free modules.
    pub fn free(ring: RingSpec, orientation: Orientation, ranks: Vec<usize>, maps: Vec<SparseMat<T>>) -> Result<Self> {
        let relations = vec![Vec::new(); ranks.len()];
        Self::new(ring, orientation, ranks, relations, maps)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn relations(&self, k: usize) -> &[(usize, T)] {
        &self.relations[k]
    }

    /// The stored differential joining degrees `k` and `k + 1`.
    pub fn differential(&self, k: usize) -> &SparseMat<T> {
        &self.maps[k]
    }

    /// `(source degree, target degree)` of `maps[k]`.
    fn link(&self, k: usize) -> (usize, usize) {
        match self.orientation {
            Orientation::Chain => (k + 1, k),
            Orientation::Cochain => (k, k + 1),
        }
    }

    /// The map leaving degree `k` and its target degree. At the low end of a
    /// chain complex this is the zero map to nothing.
    pub(crate) fn outgoing(&self, k: usize) -> Result<(SparseMat<T>, Option<usize>)> {
        match self.orientation {
            Orientation::Chain if k == 0 => Ok((SparseMat::zero(0, self.ranks[0]), None)),
            Orientation::Chain => Ok((self.maps[k - 1].clone(), Some(k - 1))),
            Orientation::Cochain if k < self.top_degree() => Ok((self.maps[k].clone(), Some(k + 1))),
            Orientation::Cochain => Err(Error::TopDegree {
                degree: k,
                top: self.top_degree(),
            }),
        }
    }

    /// The map arriving in degree `k`.
    pub(crate) fn incoming(&self, k: usize) -> Result<SparseMat<T>> {
        match self.orientation {
            Orientation::Chain if k < self.top_degree() => Ok(self.maps[k].clone()),
            Orientation::Chain => Err(Error::TopDegree {
                degree: k,
                top: self.top_degree(),
            }),
            Orientation::Cochain if k == 0 => Ok(SparseMat::zero(self.ranks[0], 0)),
            Orientation::Cochain => Ok(self.maps[k - 1].clone()),
        }
    }

    /// Relation factor of every coordinate of degree `k`; zero for free ones.
    pub(crate) fn factor_lookup(&self, k: usize) -> Vec<T> {
        let mut out = vec![T::zero(); self.ranks[k]];
        for (i, f) in &self.relations[k] {
            out[*i] = f.clone();
        }
        out
    }

    pub(crate) fn vanishes_mod(&self, m: &SparseMat<T>, degree: usize) -> bool {
        let factors = self.factor_lookup(degree);
        m.columns
            .iter()
            .all(|col| col.iter().all(|(i, v)| divisible(v, &factors[*i])))
    }

    fn check_relations_preserved(&self, m: &SparseMat<T>, from: usize, to: usize) -> Result<()> {
        let factors = self.factor_lookup(to);
        for (i, f) in &self.relations[from] {
            for (r, v) in &m.columns[*i] {
                if !divisible(&v.mul_c(f)?, &factors[*r]) {
                    return Err(Error::BrokenComplex(format!(
                        "differential out of degree {from} does not preserve relations"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Is `v ≡ 0` modulo `f`, where `f = 0` means no relation?
pub(crate) fn divisible<T: Scalar>(v: &T, f: &T) -> bool {
    if f.is_zero() {
        v.is_zero()
    } else {
        v.is_multiple_of(f)
    }
}

/// A degree-preserving map of complexes with the same orientation.
#[derive(Clone, Debug)]
pub struct ChainMap<T> {
    maps: Vec<SparseMat<T>>,
}

impl<T: Scalar> ChainMap<T> {
    /// Checks shapes, relation preservation and commutation with the
    /// differentials modulo target relations in every shared degree.
    pub fn new(source: &ChainComplex<T>, target: &ChainComplex<T>, maps: Vec<SparseMat<T>>) -> Result<Self> {
        if source.orientation != target.orientation {
            return Err(Error::Input("chain map between complexes of different orientation".into()));
        }
        let top = source.top_degree().min(target.top_degree());
        if maps.len() != top + 1 {
            return Err(Error::Dimension(format!("chain map needs {} components", top + 1)));
        }
        for (k, f) in maps.iter().enumerate() {
            if f.cols() != source.rank(k) || f.rows != target.rank(k) {
                return Err(Error::Dimension(format!("chain map component {k} has the wrong shape")));
            }
            let factors = target.factor_lookup(k);
            for (i, r) in &source.relations[k] {
                for (row, v) in &f.columns[*i] {
                    if !divisible(&v.mul_c(r)?, &factors[*row]) {
                        return Err(Error::IllDefinedMap(format!("chain map component {k} breaks relations")));
                    }
                }
            }
        }
        for k in 0..top {
            let (from, to) = source.link(k);
            let left = target.maps[k].mul(&maps[from])?;
            let right = maps[to].mul(&source.maps[k])?;
            if !target.vanishes_mod(&sparse_sub(&left, &right)?, to) {
                return Err(Error::BrokenComplex(format!(
                    "chain map does not commute with the differential at degree {from}"
                )));
            }
        }
        Ok(ChainMap { maps })
    }

    pub fn component(&self, k: usize) -> &SparseMat<T> {
        &self.maps[k]
    }

    pub fn top_degree(&self) -> usize {
        self.maps.len() - 1
    }
}

pub(crate) fn sparse_sub<T: Scalar>(a: &SparseMat<T>, b: &SparseMat<T>) -> Result<SparseMat<T>> {
    if a.rows != b.rows || a.cols() != b.cols() {
        return Err(Error::Dimension("sparse difference shape".into()));
    }
    let columns = a
        .columns
        .iter()
        .zip(&b.columns)
        .map(|(x, y)| axpy(x, &-T::one(), y))
        .collect::<Result<_>>()?;
    Ok(SparseMat { rows: a.rows, columns })
}

/// Collects `(row, col, value)` entries into sorted, merged columns.
pub(crate) struct ColumnBuilder<T> {
    rows: usize,
    columns: Vec<Vec<(usize, T)>>,
}

impl<T: Scalar> ColumnBuilder<T> {
    pub(crate) fn new(rows: usize, cols: usize) -> Self {
        ColumnBuilder {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    pub(crate) fn push(&mut self, row: usize, col: usize, v: T) {
        if !v.is_zero() {
            self.columns[col].push((row, v));
        }
    }

    pub(crate) fn finish(self) -> Result<SparseMat<T>> {
        let columns = self
            .columns
            .into_iter()
            .map(compress)
            .collect::<Result<Vec<SparseVec<T>>>>()?;
        Ok(SparseMat {
            rows: self.rows,
            columns,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mat::Mat;

    fn sp(rows: &[&[i64]]) -> SparseMat<i64> {
        SparseMat::from_dense(&Mat::from_i64_rows(rows))
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = sp(&[&[1]]);
        let d2 = sp(&[&[1]]);
        let err = ChainComplex::free(RingSpec::Integers, Orientation::Chain, vec![1, 1, 1], vec![d1, d2]);
        assert!(matches!(err, Err(Error::BrokenComplex(_))));
    }

    #[test]
    fn square_vanishing_modulo_relations() {
        // Z --2--> Z/4 --2--> Z/4
        let ok = ChainComplex::new(
            RingSpec::Integers,
            Orientation::Chain,
            vec![1, 1, 1],
            vec![vec![(0, 4)], vec![(0, 4)], vec![]],
            vec![sp(&[&[2]]), sp(&[&[2]])],
        );
        assert!(ok.is_ok());
        let bad = ChainComplex::new(
            RingSpec::Integers,
            Orientation::Chain,
            vec![1, 1],
            vec![vec![], vec![(0, 2)]],
            vec![sp(&[&[1]])],
        );
        // Z/2 --1--> Z is not well defined
        assert!(matches!(bad, Err(Error::BrokenComplex(_))));
    }

    #[test]
    fn chain_map_must_commute() {
        let c = ChainComplex::free(RingSpec::Integers, Orientation::Chain, vec![1, 1], vec![sp(&[&[2]])]).unwrap();
        assert!(ChainMap::new(&c, &c, vec![sp(&[&[3]]), sp(&[&[3]])]).is_ok());
        assert!(ChainMap::new(&c, &c, vec![sp(&[&[3]]), sp(&[&[1]])]).is_err());
    }
}

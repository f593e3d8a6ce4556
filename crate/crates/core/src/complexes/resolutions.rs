//! Concrete complexes computing group (co)homology: the normalized bar
//! complex, its dual, the periodic complex of a cyclic group, and the tensor
//! product of periodic complexes for an abelian group.

use std::collections::HashMap;

use crate::algebra::mat::{Mat, SparseMat};
use crate::complexes::{ChainComplex, ChainMap, ColumnBuilder, Orientation};
use crate::error::{Error, Result};
use crate::gmodules::GModule;
use crate::groups::{abelian_basis, GroupHom, GroupTable};
use crate::scalar::Scalar;

/// Numbering of `k`-tuples of non-identity elements, first slot most
/// significant.
#[derive(Clone, Copy, Debug)]
pub struct BarIndex {
    base: usize,
}

impl BarIndex {
    pub fn new(group: &GroupTable) -> Self {
        BarIndex {
            base: group.order() - 1,
        }
    }

    pub fn count(&self, k: usize) -> Result<usize> {
        let mut n: usize = 1;
        for _ in 0..k {
            n = n.checked_mul(self.base).ok_or(Error::Overflow)?;
        }
        Ok(n)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &g| acc * self.base + (g - 1))
    }

    pub fn decode(&self, mut idx: usize, k: usize) -> Vec<usize> {
        let mut out = vec![0; k];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.base + 1;
            idx /= self.base;
        }
        out
    }
}

fn check_rank(blocks: usize, r: usize, budget: usize) -> Result<()> {
    let cells = blocks.checked_mul(r).ok_or(Error::Overflow)?;
    if cells > budget {
        return Err(Error::Budget { cells, budget });
    }
    Ok(())
}

fn block_relations<T: Scalar>(m: &GModule<T>, blocks: usize) -> Vec<(usize, T)> {
    let r = m.rank();
    let factors = m.module().invariant_factors();
    let mut out = Vec::with_capacity(blocks * factors.len());
    for b in 0..blocks {
        for (i, f) in factors.iter().enumerate() {
            out.push((b * r + i, f.clone()));
        }
    }
    out
}

/// `C_k = ⊕_{Ḡ^k} M` with
/// `d(m[g₁|…|g_k]) = g₁⁻¹m[g₂|…] + Σ (−1)^i m[…|g_i g_{i+1}|…] + (−1)^k m[g₁|…|g_{k−1}]`,
/// dropping tuples that contain the identity.
pub fn bar_complex<T: Scalar>(m: &GModule<T>, top: usize, budget: usize) -> Result<ChainComplex<T>> {
    let g = m.group();
    let idx = BarIndex::new(g);
    let r = m.rank();
    let counts = (0..=top).map(|k| idx.count(k)).collect::<Result<Vec<_>>>()?;
    check_rank(counts[top], r, budget)?;
    let mut maps = Vec::with_capacity(top);
    for k in 1..=top {
        let mut cb = ColumnBuilder::new(counts[k - 1] * r, counts[k] * r);
        for t in 0..counts[k] {
            let tuple = idx.decode(t, k);
            let a = m.action(g.inv(tuple[0]));
            let first = idx.encode(&tuple[1..]);
            for j in 0..r {
                let col = t * r + j;
                for i in 0..r {
                    cb.push(first * r + i, col, a[(i, j)].clone());
                }
                for i in 1..k {
                    let p = g.mul(tuple[i - 1], tuple[i]);
                    if p == 0 {
                        continue;
                    }
                    let mut face = tuple[..i - 1].to_vec();
                    face.push(p);
                    face.extend_from_slice(&tuple[i + 1..]);
                    cb.push(idx.encode(&face) * r + j, col, sign(i));
                }
                cb.push(idx.encode(&tuple[..k - 1]) * r + j, col, sign(k));
            }
        }
        maps.push(cb.finish()?);
    }
    let ranks = counts.iter().map(|c| c * r).collect();
    let relations = counts.iter().map(|&c| block_relations(m, c)).collect();
    ChainComplex::new(m.ring(), Orientation::Chain, ranks, relations, maps)
}

/// Normalized cochains `C^k = Map(Ḡ^k, M)` with
/// `δf(g₁,…,g_{k+1}) = g₁f(g₂,…) + Σ (−1)^i f(…,g_i g_{i+1},…) + (−1)^{k+1} f(g₁,…,g_k)`.
pub fn cobar_complex<T: Scalar>(m: &GModule<T>, top: usize, budget: usize) -> Result<ChainComplex<T>> {
    let g = m.group();
    let idx = BarIndex::new(g);
    let r = m.rank();
    let counts = (0..=top).map(|k| idx.count(k)).collect::<Result<Vec<_>>>()?;
    check_rank(counts[top], r, budget)?;
    let mut maps = Vec::with_capacity(top);
    for k in 0..top {
        let mut cb = ColumnBuilder::new(counts[k + 1] * r, counts[k] * r);
        for s in 0..counts[k + 1] {
            let tuple = idx.decode(s, k + 1);
            let a = m.action(tuple[0]);
            let first = idx.encode(&tuple[1..]);
            for i in 0..r {
                let row = s * r + i;
                for j in 0..r {
                    cb.push(row, first * r + j, a[(i, j)].clone());
                }
                for p in 1..=k {
                    let prod = g.mul(tuple[p - 1], tuple[p]);
                    if prod == 0 {
                        continue;
                    }
                    let mut face = tuple[..p - 1].to_vec();
                    face.push(prod);
                    face.extend_from_slice(&tuple[p + 1..]);
                    cb.push(row, idx.encode(&face) * r + i, sign(p));
                }
                cb.push(row, idx.encode(&tuple[..k]) * r + i, sign(k + 1));
            }
        }
        maps.push(cb.finish()?);
    }
    let ranks = counts.iter().map(|c| c * r).collect();
    let relations = counts.iter().map(|&c| block_relations(m, c)).collect();
    ChainComplex::new(m.ring(), Orientation::Cochain, ranks, relations, maps)
}

fn sign<T: Scalar>(i: usize) -> T {
    if i % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `1 + a + … + a^{m−1}`
fn norm_of<T: Scalar>(a: &Mat<T>, m: u64) -> Result<Mat<T>> {
    let mut acc = Mat::zeros(a.rows(), a.cols());
    let mut p = Mat::identity(a.rows());
    for _ in 0..m {
        acc = acc.add(&p)?;
        p = p.mul(a)?;
    }
    Ok(acc)
}

/// The 2-periodic complex of the cyclic group of order `m`, whose
/// differentials alternate `t − 1` and `N = Σ tⁱ` for the first generator `t`.
pub fn periodic_complex<T: Scalar>(
    m: usize,
    module: &GModule<T>,
    top: usize,
    orientation: Orientation,
) -> Result<ChainComplex<T>> {
    let g = module.group();
    let t = g.generators().first().copied().unwrap_or(0);
    if g.order() != m || g.element_order(t) != m {
        return Err(Error::Precondition(format!("group is not cyclic of order {m}")));
    }
    let a = module.action(t);
    let r = module.rank();
    let minus = a.sub(&Mat::identity(r))?;
    let norm = norm_of(a, m as u64)?;
    // the map between degrees k and k+1 is t − 1 when k is even
    let maps = (0..top)
        .map(|k| SparseMat::from_dense(if k % 2 == 0 { &minus } else { &norm }))
        .collect();
    let ranks = vec![r; top + 1];
    let relations = vec![block_relations(module, 1); top + 1];
    ChainComplex::new(module.ring(), orientation, ranks, relations, maps)
}

/// Multi-indices `κ ∈ N^s` by total degree, for the tensor product of the
/// periodic complexes of the cyclic factors of an abelian group.
#[derive(Clone, Debug)]
pub struct ProductIndex {
    pub basis: Vec<(usize, u64)>,
    by_degree: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl ProductIndex {
    pub fn new(group: &GroupTable, top: usize) -> Result<Self> {
        let basis = abelian_basis(group)?;
        let s = basis.len();
        let mut by_degree = Vec::with_capacity(top + 1);
        let mut lookup = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let list = compositions(k, s);
            lookup.push(list.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect());
            by_degree.push(list);
        }
        Ok(ProductIndex {
            basis,
            by_degree,
            lookup,
        })
    }

    pub fn count(&self, k: usize) -> usize {
        self.by_degree[k].len()
    }

    pub fn index(&self, kappa: &[usize]) -> usize {
        let k: usize = kappa.iter().sum();
        self.lookup[k][kappa]
    }

    pub fn multi_index(&self, k: usize, i: usize) -> &[usize] {
        &self.by_degree[k][i]
    }
}

/// Compositions of `k` into `s` nonnegative parts, lexicographic.
fn compositions(k: usize, s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, s - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `⊗_i P(b_i)` tensored with `M` (or mapped into `M` for cochains):
/// `d(e_κ) = Σ_i (−1)^{κ_1+…+κ_{i−1}} ε_i e_{κ−e_i}`, with `ε_i = b_i − 1` when
/// `κ_i` is odd and `N_i` when it is even.
pub fn product_complex<T: Scalar>(
    m: &GModule<T>,
    top: usize,
    orientation: Orientation,
    budget: usize,
) -> Result<(ChainComplex<T>, ProductIndex)> {
    let index = ProductIndex::new(m.group(), top)?;
    let r = m.rank();
    check_rank(index.count(top), r, budget)?;
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for &(b, ord) in &index.basis {
        let a = m.action(b);
        odd.push(a.sub(&Mat::identity(r))?);
        even.push(norm_of(a, ord)?);
    }
    let mut maps = Vec::with_capacity(top);
    for k in 0..top {
        // κ runs over degree k+1; the face κ − e_i lies in degree k
        let (rows, cols) = match orientation {
            Orientation::Chain => (index.count(k) * r, index.count(k + 1) * r),
            Orientation::Cochain => (index.count(k + 1) * r, index.count(k) * r),
        };
        let mut cb = ColumnBuilder::new(rows, cols);
        for (big, kappa) in index.by_degree[k + 1].iter().enumerate() {
            let mut prefix = 0;
            for i in 0..kappa.len() {
                if kappa[i] > 0 {
                    let mut face = kappa.clone();
                    face[i] -= 1;
                    let small = index.index(&face);
                    let e = if kappa[i] % 2 == 1 { &odd[i] } else { &even[i] };
                    let s: T = sign(prefix);
                    for a in 0..r {
                        for b in 0..r {
                            let v = e[(a, b)].mul_c(&s)?;
                            match orientation {
                                Orientation::Chain => cb.push(small * r + a, big * r + b, v),
                                Orientation::Cochain => cb.push(big * r + a, small * r + b, v),
                            }
                        }
                    }
                }
                prefix += kappa[i];
            }
        }
        maps.push(cb.finish()?);
    }
    let ranks = (0..=top).map(|k| index.count(k) * r).collect();
    let relations = (0..=top).map(|k| block_relations(m, index.count(k))).collect();
    let c = ChainComplex::new(m.ring(), orientation, ranks, relations, maps)?;
    Ok((c, index))
}

/// `id ⊗ f` on complexes built block by block from the same indexing, with
/// `f` a `rank(target) × rank(source)` coefficient matrix.
pub fn blockwise_map<T: Scalar>(
    source: &ChainComplex<T>,
    target: &ChainComplex<T>,
    source_rank: usize,
    target_rank: usize,
    f: &Mat<T>,
) -> Result<ChainMap<T>> {
    if f.rows() != target_rank || f.cols() != source_rank {
        return Err(Error::Dimension("coefficient map shape".into()));
    }
    let top = source.top_degree().min(target.top_degree());
    let mut maps = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let blocks = if source_rank > 0 {
            source.rank(k) / source_rank
        } else {
            target.rank(k) / target_rank.max(1)
        };
        if blocks * source_rank != source.rank(k) || blocks * target_rank != target.rank(k) {
            return Err(Error::Dimension("complexes are not built on the same blocks".into()));
        }
        let mut cb = ColumnBuilder::new(target.rank(k), source.rank(k));
        for b in 0..blocks {
            for j in 0..source_rank {
                for i in 0..target_rank {
                    cb.push(b * target_rank + i, b * source_rank + j, f[(i, j)].clone());
                }
            }
        }
        maps.push(cb.finish()?);
    }
    ChainMap::new(source, target, maps)
}

/// `[g₁|…|g_k] ⊗ m ↦ [φg₁|…|φg_k] ⊗ f(m)` between bar complexes of the domain
/// and codomain of `φ`; tuples hitting the identity map to zero.
pub fn bar_map<T: Scalar>(
    phi: &GroupHom,
    f: &Mat<T>,
    source: &ChainComplex<T>,
    target: &ChainComplex<T>,
) -> Result<ChainMap<T>> {
    let (si, ti) = (BarIndex::new(phi.domain()), BarIndex::new(phi.codomain()));
    let (r, r2) = (f.cols(), f.rows());
    let top = source.top_degree().min(target.top_degree());
    let mut maps = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let (sc, tc) = (si.count(k)?, ti.count(k)?);
        if sc * r != source.rank(k) || tc * r2 != target.rank(k) {
            return Err(Error::Dimension("bar complexes do not match the map".into()));
        }
        let mut cb = ColumnBuilder::new(tc * r2, sc * r);
        for t in 0..sc {
            let image: Vec<usize> = si.decode(t, k).iter().map(|&g| phi.apply(g)).collect();
            if image.contains(&0) {
                continue;
            }
            let u = ti.encode(&image);
            for j in 0..r {
                for i in 0..r2 {
                    cb.push(u * r2 + i, t * r + j, f[(i, j)].clone());
                }
            }
        }
        maps.push(cb.finish()?);
    }
    ChainMap::new(source, target, maps)
}

/// `F ↦ f ∘ F ∘ φ^k` from cochains on the codomain of `φ` to cochains on
/// its domain; `f` maps the codomain's coefficients to the domain's.
pub fn cobar_map<T: Scalar>(
    phi: &GroupHom,
    f: &Mat<T>,
    source: &ChainComplex<T>,
    target: &ChainComplex<T>,
) -> Result<ChainMap<T>> {
    let (di, ci) = (BarIndex::new(phi.domain()), BarIndex::new(phi.codomain()));
    let (r_src, r_tgt) = (f.cols(), f.rows());
    let top = source.top_degree().min(target.top_degree());
    let mut maps = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let (cc, dc) = (ci.count(k)?, di.count(k)?);
        if cc * r_src != source.rank(k) || dc * r_tgt != target.rank(k) {
            return Err(Error::Dimension("cobar complexes do not match the map".into()));
        }
        let mut cb = ColumnBuilder::new(dc * r_tgt, cc * r_src);
        for t in 0..dc {
            let image: Vec<usize> = di.decode(t, k).iter().map(|&g| phi.apply(g)).collect();
            if image.contains(&0) {
                continue;
            }
            let u = ci.encode(&image);
            for i in 0..r_tgt {
                for j in 0..r_src {
                    cb.push(t * r_tgt + i, u * r_src + j, f[(i, j)].clone());
                }
            }
        }
        maps.push(cb.finish()?);
    }
    ChainMap::new(source, target, maps)
}

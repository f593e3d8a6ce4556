//! Tensor, Hom, Tor and Ext over `Z` and `Z[1/l]`.
//!
//! Over a PID every `N` is `⊕ R/(f_i) ⊕ R^s`, so with `D = diag(f_1, .., f_t, 0, .., 0)`
//! acting blockwise on `M^(t+s)`:
//!
//! * `N ⊗ M = coker(D)`, `Hom(N, M) = ker(D)`,
//! * `Tor_1(N, M) = ker(D_tors)`, `Ext^1(N, M) = coker(D_tors)`,
//!
//! where `D_tors` is the restriction to the `t` torsion blocks. Higher Tor
//! and Ext vanish. These element-level descriptions are what lets a group
//! action on `M` pass to the functors blockwise.

use crate::algebra::mat::Mat;
use crate::algebra::module::{ModuleMap, PresentedModule};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `M ⊕ M ⊕ ... ⊕ M` (`k` copies).
pub fn power<T: Scalar>(m: &PresentedModule<T>, k: usize) -> Result<PresentedModule<T>> {
    let blocks: Vec<&Mat<T>> = std::iter::repeat(m.relations()).take(k).collect();
    let rel = if k == 0 {
        Mat::zeros(0, 0)
    } else {
        Mat::block_diag(&blocks)
    };
    PresentedModule::new(m.ring(), rel)
}

/// Block-diagonal matrix with `mats[i]` in block `i`.
pub fn block_diag_of<T: Scalar>(mats: &[Mat<T>]) -> Mat<T> {
    let refs: Vec<&Mat<T>> = mats.iter().collect();
    Mat::block_diag(&refs)
}

/// The map `D` on `M^k` multiplying block `i` by `scalars[i]`.
pub fn scalar_blocks<T: Scalar>(m: &PresentedModule<T>, scalars: &[T]) -> Result<ModuleMap<T>> {
    let mk = power(m, scalars.len())?;
    let n = m.ambient_rank();
    let mats: Vec<Mat<T>> = scalars.iter().map(|c| Mat::scalar(n, c.clone())).collect();
    ModuleMap::new(mk.clone(), mk, block_diag_of(&mats))
}

fn torsion_scalars<T: Scalar>(n: &PresentedModule<T>) -> Vec<T> {
    n.invariant_factors().to_vec()
}

fn all_scalars<T: Scalar>(n: &PresentedModule<T>) -> Vec<T> {
    let mut s = n.invariant_factors().to_vec();
    s.extend(std::iter::repeat(T::zero()).take(n.free_rank()));
    s
}

/// `N ⊗_R M` from the standard block presentation
/// `R^(a*b) / (rel_N ⊗ 1, 1 ⊗ rel_M)`.
pub fn tensor<T: Scalar>(n: &PresentedModule<T>, m: &PresentedModule<T>) -> Result<PresentedModule<T>> {
    if n.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let (a, b) = (n.ambient_rank(), m.ambient_rank());
    let (rn, rm) = (n.relations(), m.relations());
    let mut cols: Vec<Vec<T>> = Vec::new();
    for r in 0..rn.cols() {
        for j in 0..b {
            let mut v = vec![T::zero(); a * b];
            for i in 0..a {
                v[i * b + j] = rn[(i, r)].clone();
            }
            cols.push(v);
        }
    }
    for i in 0..a {
        for s in 0..rm.cols() {
            let mut v = vec![T::zero(); a * b];
            for j in 0..b {
                v[i * b + j] = rm[(j, s)].clone();
            }
            cols.push(v);
        }
    }
    PresentedModule::new(n.ring(), Mat::from_cols(&cols, a * b)?)
}

/// `N ⊗ M` as `coker(D)` on `M^(t+s)`; the projection is from `M^(t+s)`.
pub fn tensor_blocks<T: Scalar>(
    n: &PresentedModule<T>,
    m: &PresentedModule<T>,
) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
    scalar_blocks(m, &all_scalars(n))?.cokernel()
}

/// `Hom_R(N, M)` as `ker(D)` with its inclusion into `M^(t+s)`.
pub fn hom_blocks<T: Scalar>(
    n: &PresentedModule<T>,
    m: &PresentedModule<T>,
) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
    scalar_blocks(m, &all_scalars(n))?.kernel()
}

pub fn hom<T: Scalar>(n: &PresentedModule<T>, m: &PresentedModule<T>) -> Result<PresentedModule<T>> {
    if n.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(hom_blocks(n, m)?.0)
}

/// `Tor_1^R(N, M) = ⊕ M[f_i]` with its inclusion into `M^t`.
pub fn tor1_blocks<T: Scalar>(
    n: &PresentedModule<T>,
    m: &PresentedModule<T>,
) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
    if n.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    scalar_blocks(m, &torsion_scalars(n))?.kernel()
}

/// `Ext^1_R(N, M) = ⊕ M / f_i M` with the projection from `M^t`.
pub fn ext1_blocks<T: Scalar>(
    n: &PresentedModule<T>,
    m: &PresentedModule<T>,
) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
    if n.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    scalar_blocks(m, &torsion_scalars(n))?.cokernel()
}

/// `Tor_n^R(N, M)`; zero for `n >= 2` since `R` is a PID.
pub fn tor<T: Scalar>(k: usize, n: &PresentedModule<T>, m: &PresentedModule<T>) -> Result<PresentedModule<T>> {
    match k {
        0 => tensor(n, m),
        1 => Ok(tor1_blocks(n, m)?.0),
        _ => Ok(PresentedModule::zero(n.ring())),
    }
}

/// `Ext^n_R(N, M)`; zero for `n >= 2`.
pub fn ext<T: Scalar>(k: usize, n: &PresentedModule<T>, m: &PresentedModule<T>) -> Result<PresentedModule<T>> {
    match k {
        0 => hom(n, m),
        1 => Ok(ext1_blocks(n, m)?.0),
        _ => Ok(PresentedModule::zero(n.ring())),
    }
}

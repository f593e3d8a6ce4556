//! Finitely presented modules over `Z` and `Z[1/l]`, and maps between them.
//!
//! A module is `R^ambient / span_R(relations)`. Its Smith data gives
//! "normal coordinates": torsion coordinates with invariant factors
//! `f_0 | f_1 | ...` (each `> 1` and coprime to `l`), followed by free
//! coordinates. `to_normal` reads the normal coordinates of an ambient vector
//! and `from_normal` maps normal generators back to ambient vectors.
//!
//! A module is in *normal form* when its ambient coordinates already are the
//! normal coordinates. For those, an integer vector lies in the `R`-span of
//! the relations iff it lies in their `Z`-span; the homology code relies on
//! this.

use std::fmt;

use crate::algebra::mat::Mat;
use crate::algebra::ring::RingSpec;
use crate::algebra::snf::{integer_smith, kernel, Solver, Track};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct PresentedModule<T> {
    ring: RingSpec,
    ambient: usize,
    relations: Mat<T>,
    factors: Vec<T>,
    free_rank: usize,
    to_normal: Mat<T>,
    from_normal: Mat<T>,
}

impl<T: Scalar> PresentedModule<T> {
    /// `R^ambient / span(columns of relations)`.
    pub fn new(ring: RingSpec, relations: Mat<T>) -> Result<Self> {
        let ambient = relations.rows();
        let s = integer_smith(&relations, Track::LEFT)?;
        let u = s.u.as_ref().expect("tracked");
        let ui = s.u_inv.as_ref().expect("tracked");
        let mut factors = Vec::new();
        let mut kept = Vec::new();
        for (i, d) in s.diag.iter().enumerate() {
            let f = ring.strip(d);
            if !f.is_one() {
                factors.push(f);
                kept.push(i);
            }
        }
        kept.extend(s.rank()..ambient);
        let free_rank = ambient - s.rank();
        let mut to_normal = u.select_rows(&kept);
        for (i, f) in factors.iter().enumerate() {
            to_normal.reduce_row_mod(i, f);
        }
        Ok(PresentedModule {
            ring,
            ambient,
            relations,
            factors,
            free_rank,
            to_normal,
            from_normal: ui.select_cols(&kept),
        })
    }

    /// The normal-form module `⊕ R/(f_i) ⊕ R^free_rank`.
    pub fn normal(ring: RingSpec, factors: &[T], free_rank: usize) -> Result<Self> {
        for w in factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::Input(format!(
                    "invariant factors {} and {} do not form a divisibility chain",
                    w[0], w[1]
                )));
            }
        }
        for f in factors {
            if *f <= T::one() || ring.strip(f) != *f {
                return Err(Error::Input(format!(
                    "invariant factor {f} is not normalized for {ring}"
                )));
            }
        }
        let t = factors.len();
        let n = t + free_rank;
        let mut relations = Mat::zeros(n, t);
        for (i, f) in factors.iter().enumerate() {
            relations[(i, i)] = f.clone();
        }
        Ok(PresentedModule {
            ring,
            ambient: n,
            relations,
            factors: factors.to_vec(),
            free_rank,
            to_normal: Mat::identity(n),
            from_normal: Mat::identity(n),
        })
    }

    /// `⊕ R/(f_i)` for arbitrary integers (units and zeros allowed).
    pub fn from_cyclic_orders(ring: RingSpec, orders: &[T]) -> Result<Self> {
        Self::new(ring, Mat::diag(orders))
    }

    pub fn free(ring: RingSpec, rank: usize) -> Self {
        Self::normal(ring, &[], rank).expect("free module")
    }

    pub fn zero(ring: RingSpec) -> Self {
        Self::free(ring, 0)
    }

    /// The same module re-presented in its normal coordinates, with the
    /// isomorphisms `self -> normal` and `normal -> self`.
    pub fn normalized(&self) -> Result<(Self, ModuleMap<T>, ModuleMap<T>)> {
        let n = Self::normal(self.ring, &self.factors, self.free_rank)?;
        let to = ModuleMap::new(self.clone(), n.clone(), self.to_normal.clone())?;
        let from = ModuleMap::new(n.clone(), self.clone(), self.from_normal.clone())?;
        Ok((n, to, from))
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn relations(&self) -> &Mat<T> {
        &self.relations
    }

    pub fn invariant_factors(&self) -> &[T] {
        &self.factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_rank(&self) -> usize {
        self.factors.len()
    }

    /// Number of normal generators.
    pub fn normal_rank(&self) -> usize {
        self.factors.len() + self.free_rank
    }

    pub fn to_normal(&self) -> &Mat<T> {
        &self.to_normal
    }

    pub fn from_normal(&self) -> &Mat<T> {
        &self.from_normal
    }

    pub fn is_zero(&self) -> bool {
        self.normal_rank() == 0
    }

    pub fn is_normal_form(&self) -> bool {
        self.ambient == self.normal_rank()
            && self.to_normal == Mat::identity(self.ambient)
            && self.relations.cols() == self.factors.len()
    }

    /// Order of a finite module.
    pub fn order(&self) -> Option<T> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.factors.iter().fold(T::one(), |a, f| a * f.clone()))
    }

    /// Same isomorphism type?
    pub fn same_structure(&self, other: &Self) -> bool {
        self.ring == other.ring && self.factors == other.factors && self.free_rank == other.free_rank
    }

    /// Normal coordinates of an ambient vector, torsion entries in `[0, f)`.
    pub fn normal_coords(&self, x: &[T]) -> Result<Vec<T>> {
        let mut y = self.to_normal.mul_vec(x)?;
        for (yi, f) in y.iter_mut().zip(&self.factors) {
            *yi = yi.modulo(f);
        }
        Ok(y)
    }

    /// Is `x` zero in the module (i.e. in the `R`-span of the relations)?
    pub fn is_zero_element(&self, x: &[T]) -> Result<bool> {
        Ok(self.normal_coords(x)?.iter().all(|v| v.is_zero()))
    }

    /// Are all columns of `m` zero in the module?
    pub fn is_zero_element_matrix(&self, m: &Mat<T>) -> Result<bool> {
        for j in 0..m.cols() {
            if !self.is_zero_element(&m.col(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Column `j` of the canonical relation matrix in normal coordinates:
    /// `f_j e_j` for torsion coordinates.
    pub fn normal_relation_matrix(&self) -> Mat<T> {
        let mut r = Mat::zeros(self.normal_rank(), self.factors.len());
        for (i, f) in self.factors.iter().enumerate() {
            r[(i, i)] = f.clone();
        }
        r
    }

    /// Integer vectors `x` (ambient) for which `A x` is zero in `self`, where
    /// `A` maps some other lattice into the ambient space of `self`: returns
    /// a basis of `{x : A x ∈ span_R(relations)} ∩ Z^n`.
    pub fn preimage_of_zero(&self, a: &Mat<T>) -> Result<Mat<T>> {
        let n = a.cols();
        let pa = self.to_normal.mul(a)?;
        let aug = pa.hstack(&self.normal_relation_matrix())?;
        let k = kernel(&aug)?;
        let rows: Vec<usize> = (0..n).collect();
        Ok(k.select_rows(&rows))
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let rel = Mat::block_diag(&[&self.relations, &other.relations]);
        Self::new(self.ring, rel)
    }

    /// Enumerates all elements of a finite module as normal coordinate
    /// vectors. Intended for brute-force checks on small modules.
    pub fn enumerate_elements(&self, limit: usize) -> Option<Vec<Vec<T>>> {
        if self.free_rank > 0 {
            return None;
        }
        let mut total = 1usize;
        for f in &self.factors {
            total = total.checked_mul(f.to_usize()?)?;
            if total > limit {
                return None;
            }
        }
        let mut out = vec![vec![]];
        for f in &self.factors {
            let f = f.to_usize()?;
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..f).map(move |k| {
                        let mut w = v.clone();
                        w.push(T::from_usize_c(k));
                        w
                    })
                })
                .collect();
        }
        Some(out)
    }
}

impl<T: Scalar> fmt::Debug for PresentedModule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", describe(&self.factors, self.free_rank, self.ring))
    }
}

impl<T: Scalar> fmt::Display for PresentedModule<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", describe(&self.factors, self.free_rank, self.ring))
    }
}

/// Human-readable structure, e.g. `Z/2 + Z/4 + Z[1/3]^2`.
pub fn describe<T: Scalar>(factors: &[T], free_rank: usize, ring: RingSpec) -> String {
    let mut parts: Vec<String> = factors.iter().map(|f| format!("Z/{f}")).collect();
    if free_rank == 1 {
        parts.push(ring.to_string());
    } else if free_rank > 1 {
        parts.push(format!("{ring}^{free_rank}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// An `R`-linear map given by an integer matrix on ambient coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap<T> {
    domain: PresentedModule<T>,
    codomain: PresentedModule<T>,
    matrix: Mat<T>,
}

impl<T: Scalar> fmt::Debug for ModuleMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} via {:?}", self.domain, self.codomain, self.matrix)
    }
}

impl<T: Scalar> ModuleMap<T> {
    /// Constructs the map after checking that relations go to relations.
    pub fn new(domain: PresentedModule<T>, codomain: PresentedModule<T>, matrix: Mat<T>) -> Result<Self> {
        if domain.ring != codomain.ring {
            return Err(Error::RingMismatch);
        }
        if matrix.rows() != codomain.ambient || matrix.cols() != domain.ambient {
            return Err(Error::Dimension(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.ambient,
                domain.ambient
            )));
        }
        let image = matrix.mul(&domain.relations)?;
        for j in 0..image.cols() {
            if !codomain.is_zero_element(&image.col(j))? {
                return Err(Error::IllDefinedMap(format!(
                    "relation {j} of {domain} maps outside the relations of {codomain}"
                )));
            }
        }
        Ok(ModuleMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(m: &PresentedModule<T>) -> Self {
        ModuleMap {
            domain: m.clone(),
            codomain: m.clone(),
            matrix: Mat::identity(m.ambient),
        }
    }

    pub fn zero(domain: &PresentedModule<T>, codomain: &PresentedModule<T>) -> Self {
        ModuleMap {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Mat::zeros(codomain.ambient, domain.ambient),
        }
    }

    pub fn scalar(m: &PresentedModule<T>, c: T) -> Self {
        ModuleMap {
            domain: m.clone(),
            codomain: m.clone(),
            matrix: Mat::scalar(m.ambient, c),
        }
    }

    pub fn domain(&self) -> &PresentedModule<T> {
        &self.domain
    }

    pub fn codomain(&self) -> &PresentedModule<T> {
        &self.codomain
    }

    pub fn matrix(&self) -> &Mat<T> {
        &self.matrix
    }

    /// The map between normal coordinates, torsion rows reduced.
    pub fn normal_matrix(&self) -> Result<Mat<T>> {
        let mut m = self
            .codomain
            .to_normal
            .mul(&self.matrix)?
            .mul(&self.domain.from_normal)?;
        for (i, f) in self.codomain.factors.iter().enumerate() {
            m.reduce_row_mod(i, f);
        }
        Ok(m)
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ first`
    pub fn after(&self, first: &ModuleMap<T>) -> Result<ModuleMap<T>> {
        if first.codomain.ambient != self.domain.ambient || first.codomain.ring != self.domain.ring {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        Ok(ModuleMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&first.matrix)?,
        })
    }

    pub fn add(&self, other: &ModuleMap<T>) -> Result<ModuleMap<T>> {
        Ok(ModuleMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &ModuleMap<T>) -> Result<ModuleMap<T>> {
        Ok(ModuleMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn scaled(&self, c: &T) -> Result<ModuleMap<T>> {
        Ok(ModuleMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scale(c)?,
        })
    }

    /// The same matrix with a different (compatible) domain; checked.
    pub fn with_domain(&self, domain: PresentedModule<T>) -> Result<ModuleMap<T>> {
        ModuleMap::new(domain, self.codomain.clone(), self.matrix.clone())
    }

    /// Equality modulo the codomain relations.
    pub fn equals(&self, other: &ModuleMap<T>) -> Result<bool> {
        if self.matrix.rows() != other.matrix.rows() || self.matrix.cols() != other.matrix.cols() {
            return Ok(false);
        }
        let diff = self.matrix.sub(&other.matrix)?;
        for j in 0..diff.cols() {
            if !self.codomain.is_zero_element(&diff.col(j))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_zero(&self) -> Result<bool> {
        self.equals(&ModuleMap::zero(&self.domain, &self.codomain))
    }

    pub fn is_identity(&self) -> Result<bool> {
        if self.domain != self.codomain {
            return Ok(false);
        }
        self.equals(&ModuleMap::identity(&self.domain))
    }

    /// `ker(self)` with its inclusion into the domain.
    pub fn kernel(&self) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
        let k = self.codomain.preimage_of_zero(&self.matrix)?;
        // relations among the generators k: c with k c zero in the domain
        let rel = self.domain.preimage_of_zero(&k)?;
        let module = PresentedModule::new(self.domain.ring, rel)?;
        let inc = ModuleMap::new(module.clone(), self.domain.clone(), k)?;
        Ok((module, inc))
    }

    /// `coker(self)` with the projection from the codomain.
    pub fn cokernel(&self) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
        let rel = self.codomain.relations.hstack(&self.matrix)?;
        let module = PresentedModule::new(self.codomain.ring, rel)?;
        let proj = ModuleMap::new(self.codomain.clone(), module.clone(), Mat::identity(self.codomain.ambient))?;
        Ok((module, proj))
    }

    /// Image as a submodule of the codomain, with the inclusion.
    pub fn image(&self) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
        let rel = self.codomain.preimage_of_zero(&self.matrix)?;
        let module = PresentedModule::new(self.codomain.ring, rel)?;
        let inc = ModuleMap::new(module.clone(), self.codomain.clone(), self.matrix.clone())?;
        Ok((module, inc))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel()?.0.is_zero())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.cokernel()?.0.is_zero())
    }

    /// Bijectivity, decided by vanishing of kernel and cokernel.
    pub fn is_isomorphism(&self) -> Result<bool> {
        Ok(self.is_surjective()? && self.is_injective()?)
    }

    /// Factors `self: X -> Y` through an injective `inc: S -> Y` whose image
    /// contains the image of `self`, returning `h: X -> S` with
    /// `inc ∘ h = self`.
    pub fn factor_through(&self, inc: &ModuleMap<T>) -> Result<ModuleMap<T>> {
        if inc.codomain.ambient != self.codomain.ambient {
            return Err(Error::Dimension("factor_through: codomains differ".into()));
        }
        let y = &self.codomain;
        let aug = y
            .to_normal
            .mul(&inc.matrix)?
            .hstack(&y.normal_relation_matrix())?;
        let solver = Solver::new(&aug)?;
        let s = inc.matrix.cols();
        let mut cols = Vec::with_capacity(self.matrix.cols());
        for j in 0..self.matrix.cols() {
            let b = y.to_normal.mul_vec(&self.matrix.col(j))?;
            let sol = solver.solve(&b)?.ok_or_else(|| {
                Error::IllDefinedMap("image does not lie in the given submodule".into())
            })?;
            cols.push(sol[..s].to_vec());
        }
        let m = Mat::from_cols(&cols, s)?;
        ModuleMap::new(self.domain.clone(), inc.domain.clone(), m)
    }
}

/// Cokernel of a matrix over a ring, with the projection from the free module.
pub fn cokernel<T: Scalar>(a: &Mat<T>, ring: RingSpec) -> Result<(PresentedModule<T>, ModuleMap<T>)> {
    let free = PresentedModule::free(ring, a.rows());
    let module = PresentedModule::new(ring, a.clone())?;
    let proj = ModuleMap::new(free, module.clone(), Mat::identity(a.rows()))?;
    Ok((module, proj))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(ring: RingSpec, orders: &[i64]) -> PresentedModule<i64> {
        PresentedModule::from_cyclic_orders(ring, orders).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        let (m, _) = cokernel(&Mat::<i64>::from_i64_rows(&[&[2]]), RingSpec::Integers).unwrap();
        assert_eq!(m.invariant_factors(), &[2]);
        let (m, _) = cokernel(&Mat::<i64>::from_i64_rows(&[&[2]]), RingSpec::Inverted(2)).unwrap();
        assert!(m.is_zero());
        let a = Mat::<i64>::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let (m, _) = cokernel(&a, RingSpec::Integers).unwrap();
        assert_eq!(m.invariant_factors(), &[2, 4]);
    }

    #[test]
    fn module_map_examples() {
        let z = RingSpec::Integers;
        let z2 = cyc(z, &[2]);
        let z4 = cyc(z, &[4]);
        assert!(ModuleMap::identity(&z2).is_identity().unwrap());
        let one = Mat::<i64>::from_i64_rows(&[&[1]]);
        let two = Mat::<i64>::from_i64_rows(&[&[2]]);
        assert!(matches!(
            ModuleMap::new(z2.clone(), z4.clone(), one),
            Err(Error::IllDefinedMap(_))
        ));
        let f = ModuleMap::new(z2.clone(), z4.clone(), two.clone()).unwrap();
        assert!(f.is_injective().unwrap());
        assert!(!f.is_surjective().unwrap());
    }

    #[test]
    fn isomorphism_examples() {
        let z = RingSpec::Integers;
        let z6 = cyc(z, &[6]);
        assert!(ModuleMap::identity(&z6).is_isomorphism().unwrap());
        let z4 = cyc(z, &[4]);
        assert!(!ModuleMap::scalar(&z4, 2).is_isomorphism().unwrap());
        let r = RingSpec::Inverted(3);
        let m = PresentedModule::<i64>::normal(r, &[5], 1).unwrap();
        assert!(ModuleMap::scalar(&m, 3).is_isomorphism().unwrap());
        let m = PresentedModule::<i64>::normal(z, &[5], 1).unwrap();
        assert!(!ModuleMap::scalar(&m, 3).is_isomorphism().unwrap());
    }

    #[test]
    fn kernel_of_multiplication() {
        // ×2 on Z/4 has kernel Z/2 generated by 2
        let z4 = cyc(RingSpec::Integers, &[4]);
        let (k, inc) = ModuleMap::scalar(&z4, 2).kernel().unwrap();
        assert_eq!(k.invariant_factors(), &[2]);
        assert!(inc.is_injective().unwrap());
        // ×2 on Z has zero kernel
        let z = PresentedModule::<i64>::free(RingSpec::Integers, 1);
        assert!(ModuleMap::scalar(&z, 2).kernel().unwrap().0.is_zero());
    }

    #[test]
    fn factor_through_submodule() {
        let z4 = cyc(RingSpec::Integers, &[4]);
        let (k, inc) = ModuleMap::scalar(&z4, 2).kernel().unwrap();
        // ×2 : Z/4 -> Z/4 lands in the 2-torsion
        let f = ModuleMap::scalar(&z4, 2);
        let h = f.factor_through(&inc).unwrap();
        assert!(inc.after(&h).unwrap().equals(&f).unwrap());
        assert_eq!(h.codomain(), &k);
        assert!(ModuleMap::identity(&z4).factor_through(&inc).is_err());
    }

    #[test]
    fn normal_form_roundtrip() {
        let r = RingSpec::Integers;
        let m = PresentedModule::new(r, Mat::<i64>::from_i64_rows(&[&[2, 0], &[0, 6], &[0, 0]])).unwrap();
        assert_eq!(m.invariant_factors(), &[2, 6]);
        assert_eq!(m.free_rank(), 1);
        let (n, to, from) = m.normalized().unwrap();
        assert!(n.is_normal_form());
        assert!(from.after(&to).unwrap().is_identity().unwrap());
        assert!(to.after(&from).unwrap().is_identity().unwrap());
    }
}

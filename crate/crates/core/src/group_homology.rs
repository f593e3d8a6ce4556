//! `H_n(G, M)` and `H^n(G, M)` for finite groups, maps induced by pairs
//! `(φ, f)`, and the checks built on them: comparison with coinvariants,
//! invariants and the abelianization, universal coefficients, the `E²`
//! page for `B ≤ A`, and the coefficient-change isomorphisms for abelian
//! groups with `A/B` torsion prime to the ring.

use serde::{Deserialize, Serialize};

use crate::algebra::functors::{tensor, tor};
use crate::algebra::mat::Mat;
use crate::algebra::module::{ModuleMap, PresentedModule};
use crate::complexes::{
    bar_complex, bar_map, blockwise_map, cobar_complex, cobar_map, homology, induced_on_homology, product_complex,
    ChainComplex, HomologySummary, Orientation,
};
use crate::error::{Error, Result};
use crate::gmodules::GModule;
use crate::groups::{abelianization, quotient, subgroup_generated, GroupHom, GroupTable, Subgroup};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variance {
    Homology,
    Cohomology,
}

impl Variance {
    fn orientation(self) -> Orientation {
        match self {
            Variance::Homology => Orientation::Chain,
            Variance::Cohomology => Orientation::Cochain,
        }
    }
}

/// Which complex computes the (co)homology. `Auto` takes the product of
/// periodic complexes for abelian groups and the bar complex otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    Bar,
    Product,
}

impl Method {
    fn resolve(self, g: &GroupTable) -> Method {
        match self {
            Method::Auto if g.is_abelian() => Method::Product,
            Method::Auto => Method::Bar,
            m => m,
        }
    }
}

pub struct Computation<T> {
    pub complex: ChainComplex<T>,
    pub summary: HomologySummary<T>,
    pub method: Method,
}

pub fn complex_for<T: Scalar>(
    m: &GModule<T>,
    top: usize,
    variance: Variance,
    method: Method,
    budget: usize,
) -> Result<(ChainComplex<T>, Method)> {
    let method = method.resolve(m.group());
    let c = match (method, variance) {
        (Method::Product, v) => product_complex(m, top, v.orientation(), budget)?.0,
        (_, Variance::Homology) => bar_complex(m, top, budget)?,
        (_, Variance::Cohomology) => cobar_complex(m, top, budget)?,
    };
    Ok((c, method))
}

pub fn compute<T: Scalar>(
    m: &GModule<T>,
    n: usize,
    variance: Variance,
    method: Method,
    budget: usize,
) -> Result<Computation<T>> {
    let (complex, method) = complex_for(m, n + 1, variance, method, budget)?;
    let summary = homology(&complex, n, budget)?;
    Ok(Computation {
        complex,
        summary,
        method,
    })
}

/// `H_n(G, M)`
pub fn h<T: Scalar>(m: &GModule<T>, n: usize, budget: usize) -> Result<HomologySummary<T>> {
    Ok(compute(m, n, Variance::Homology, Method::Auto, budget)?.summary)
}

/// `H^n(G, M)`
pub fn hc<T: Scalar>(m: &GModule<T>, n: usize, budget: usize) -> Result<HomologySummary<T>> {
    Ok(compute(m, n, Variance::Cohomology, Method::Auto, budget)?.summary)
}

/// The map induced by a compatible pair.
///
/// Homology: `φ : G → G'`, `f : M → M'` with `f(gm) = φ(g)f(m)`, giving
/// `H_n(G, M) → H_n(G', M')`; `source` lives over `G`.
///
/// Cohomology: `φ : G → G'`, `f : M' → M` with `f(φ(g)m') = g f(m')`, giving
/// `H^n(G', M') → H^n(G, M)`; `source` is `M'` and lives over `G'`.
pub fn induced<T: Scalar>(
    phi: &GroupHom,
    f: &ModuleMap<T>,
    source: &GModule<T>,
    target: &GModule<T>,
    n: usize,
    variance: Variance,
    budget: usize,
) -> Result<ModuleMap<T>> {
    let (src_group, tgt_group) = match variance {
        Variance::Homology => (phi.domain(), phi.codomain()),
        Variance::Cohomology => (phi.codomain(), phi.domain()),
    };
    if source.group() != src_group || target.group() != tgt_group {
        return Err(Error::Input("modules do not live over the groups of the homomorphism".into()));
    }
    if f.matrix().cols() != source.rank() || f.matrix().rows() != target.rank() {
        return Err(Error::Dimension("coefficient map does not match the modules".into()));
    }
    if !compatible(phi, f, source, target, variance)? {
        return Err(Error::Precondition("coefficient map is not equivariant".into()));
    }
    let fast = phi.is_identity() && phi.domain().is_abelian();
    // Endomorphisms of one module share a single complex and homology.
    let same = std::ptr::eq(source, target);
    let (sc, tc, map) = if fast {
        let sc = product_complex(source, n + 1, variance.orientation(), budget)?.0;
        let tc = product_complex(target, n + 1, variance.orientation(), budget)?.0;
        let map = blockwise_map(&sc, &tc, source.rank(), target.rank(), f.matrix())?;
        (sc, tc, map)
    } else {
        match variance {
            Variance::Homology => {
                let sc = bar_complex(source, n + 1, budget)?;
                let tc = if same { sc.clone() } else { bar_complex(target, n + 1, budget)? };
                let map = bar_map(phi, f.matrix(), &sc, &tc)?;
                (sc, tc, map)
            }
            Variance::Cohomology => {
                let sc = cobar_complex(source, n + 1, budget)?;
                let tc = if same { sc.clone() } else { cobar_complex(target, n + 1, budget)? };
                let map = cobar_map(phi, f.matrix(), &sc, &tc)?;
                (sc, tc, map)
            }
        }
    };
    let hs = homology(&sc, n, budget)?;
    let ht = if same { hs.clone() } else { homology(&tc, n, budget)? };
    induced_on_homology(&map, &hs, &ht)
}

fn compatible<T: Scalar>(
    phi: &GroupHom,
    f: &ModuleMap<T>,
    source: &GModule<T>,
    target: &GModule<T>,
    variance: Variance,
) -> Result<bool> {
    let a = f.matrix();
    for &g in phi.domain().generators() {
        let diff = match variance {
            Variance::Homology => a.mul(source.action(g))?.sub(&target.action(phi.apply(g)).mul(a)?)?,
            Variance::Cohomology => a.mul(source.action(phi.apply(g)))?.sub(&target.action(g).mul(a)?)?,
        };
        if !target.module().is_zero_element_matrix(&diff)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`conjugation_pair_action`] for every `g₀` in order, sharing one complex.
pub fn conjugation_pair_actions<T: Scalar>(
    m: &GModule<T>,
    n: usize,
    variance: Variance,
    budget: usize,
) -> Result<Vec<ModuleMap<T>>> {
    let g = m.group();
    let c = match variance {
        Variance::Homology => bar_complex(m, n + 1, budget)?,
        Variance::Cohomology => cobar_complex(m, n + 1, budget)?,
    };
    let hs = homology(&c, n, budget)?;
    (0..g.order())
        .map(|g0| {
            let phi = GroupHom::conjugation(g, g0);
            let map = match variance {
                Variance::Homology => bar_map(&phi, m.action(g0), &c, &c)?,
                Variance::Cohomology => cobar_map(&phi, m.action(g.inv(g0)), &c, &c)?,
            };
            induced_on_homology(&map, &hs, &hs)
        })
        .collect()
}

/// The pair (conjugation by `g₀`, action of `g₀`) acting on `H_n(G, M)`, or
/// (conjugation by `g₀`, action of `g₀⁻¹`) on `H^n(G, M)`. Always the
/// identity; exposed so that this can be checked.
pub fn conjugation_pair_action<T: Scalar>(
    m: &GModule<T>,
    g0: usize,
    n: usize,
    variance: Variance,
    budget: usize,
) -> Result<ModuleMap<T>> {
    let g = m.group();
    if g0 >= g.order() {
        return Err(Error::Input(format!("element {g0} is not in the group")));
    }
    let phi = GroupHom::conjugation(g, g0);
    let f = match variance {
        Variance::Homology => m.action_map(g0),
        Variance::Cohomology => m.action_map(g.inv(g0)),
    };
    induced(&phi, &f, m, m, n, variance, budget)
}

/// `H_q(B, M)` for `B ≤ A` abelian, as a module over `A/B` acting through
/// the coefficients. Returns the module and the projection `A → A/B`.
pub fn coefficient_module_on_homology<T: Scalar>(
    m: &GModule<T>,
    b: &Subgroup,
    q: usize,
    budget: usize,
) -> Result<(GModule<T>, GroupHom)> {
    let a = m.group();
    if !a.is_abelian() {
        return Err(Error::Precondition("the ambient group is not abelian".into()));
    }
    let (qt, proj) = quotient(a, b)?;
    let mb = m.restrict(b)?;
    let (cb, _) = product_complex(&mb, q + 1, Orientation::Chain, budget)?;
    let hq = homology(&cb, q, budget)?;
    let mut gens = Vec::new();
    for &c in qt.generators() {
        let s = *a
            .generators()
            .iter()
            .find(|&&s| proj.apply(s) == c)
            .expect("quotient generators are images of generators");
        let map = blockwise_map(&cb, &cb, m.rank(), m.rank(), m.action(s))?;
        gens.push(induced_on_homology(&map, &hq, &hq)?.matrix().clone());
    }
    Ok((GModule::new(&qt, hq.module(), &gens)?, proj))
}

#[derive(Clone)]
pub struct E2Entry<T> {
    pub p: usize,
    pub q: usize,
    pub module: PresentedModule<T>,
}

impl<T: Scalar> std::fmt::Debug for E2Entry<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E2[{},{}] = {}", self.p, self.q, self.module)
    }
}

/// `E²_{p,q} = H_p(A/B, H_q(B, M))`
pub fn lhs_e2<T: Scalar>(m: &GModule<T>, b: &Subgroup, p: usize, q: usize, budget: usize) -> Result<E2Entry<T>> {
    let (coeff, _) = coefficient_module_on_homology(m, b, q, budget)?;
    let hp = h(&coeff, p, budget)?;
    Ok(E2Entry {
        p,
        q,
        module: hp.module().clone(),
    })
}

/// One named sub-check of a verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Both sides of the universal coefficient splitting for a trivial module.
#[derive(Clone)]
pub struct UctReport<T> {
    pub lhs: PresentedModule<T>,
    pub rhs: PresentedModule<T>,
    pub pass: bool,
}

/// `H_n(G, M) ≅ H_n(G, R) ⊗ M ⊕ Tor₁(H_{n−1}(G, R), M)`, compared by
/// invariant factors since the splitting is not natural.
pub fn uct_check<T: Scalar>(g: &GroupTable, m: &PresentedModule<T>, n: usize, budget: usize) -> Result<UctReport<T>> {
    let ring = m.ring();
    let r = GModule::trivial(g, &PresentedModule::free(ring, 1))?;
    let hn = h(&r, n, budget)?;
    let mut rhs = tensor(hn.module(), m)?;
    if n > 0 {
        let hn1 = h(&r, n - 1, budget)?;
        rhs = rhs.direct_sum(&tor(1, hn1.module(), m)?)?;
    }
    let rhs = rhs.normalized()?.0;
    let lhs = h(&GModule::trivial(g, m)?, n, budget)?.module().clone();
    let pass = lhs.same_structure(&rhs);
    Ok(UctReport { lhs, rhs, pass })
}

/// The natural map `M_G → H_0(G, M)`.
pub fn h0_comparison<T: Scalar>(m: &GModule<T>, budget: usize) -> Result<ModuleMap<T>> {
    let (coinv, _) = m.coinvariants()?;
    let c = compute(m, 0, Variance::Homology, Method::Auto, budget)?;
    let cols = (0..m.rank())
        .map(|j| {
            let mut e = vec![T::zero(); m.rank()];
            e[j] = T::one();
            c.summary.project(&e)
        })
        .collect::<Result<Vec<_>>>()?;
    let mat = Mat::from_cols(&cols, c.summary.module().normal_rank())?;
    ModuleMap::new(coinv, c.summary.module().clone(), mat)
}

/// The natural map `M^G → H^0(G, M)`.
pub fn h0_cohomology_comparison<T: Scalar>(m: &GModule<T>, budget: usize) -> Result<ModuleMap<T>> {
    let (inv, inc) = m.invariants()?;
    let c = compute(m, 0, Variance::Cohomology, Method::Auto, budget)?;
    let cols = inc
        .matrix()
        .columns()
        .iter()
        .map(|x| c.summary.project(x))
        .collect::<Result<Vec<_>>>()?;
    let mat = Mat::from_cols(&cols, c.summary.module().normal_rank())?;
    ModuleMap::new(inv, c.summary.module().clone(), mat)
}

/// The natural map `G/[G, G] → H_1(G, Z)`, `ḡ ↦ [g]`, computed on the bar
/// complex.
pub fn h1_abelianization_comparison<T: Scalar>(g: &GroupTable, budget: usize) -> Result<ModuleMap<T>> {
    let ab = abelianization::<T>(g)?;
    let z = GModule::trivial(g, &PresentedModule::free(crate::algebra::RingSpec::Integers, 1))?;
    let c = compute(&z, 1, Variance::Homology, Method::Bar, budget)?;
    let n1 = g.order() - 1;
    let mut cols = Vec::new();
    for &q in ab.quotient.generators() {
        let x = (0..g.order())
            .find(|&x| ab.projection.apply(x) == q)
            .expect("projection is onto");
        let mut chain = vec![T::zero(); n1];
        chain[x - 1] = T::one();
        cols.push(c.summary.project(&chain)?);
    }
    let mat = Mat::from_cols(&cols, c.summary.module().normal_rank())?;
    ModuleMap::new(ab.module.clone(), c.summary.module().clone(), mat)
}

/// Hypotheses shared by the coefficient-change statements: `A` abelian,
/// `B ≤ A`, and the exponent of `A/B` a unit of the ring.
pub(crate) fn check_hypotheses<T: Scalar>(m: &GModule<T>, b: &Subgroup) -> Result<u64> {
    let a = m.group();
    if !a.is_abelian() {
        return Err(Error::Precondition("the group is not abelian".into()));
    }
    if b.parent() != a {
        return Err(Error::Precondition("the subgroup is not a subgroup of the module's group".into()));
    }
    let (q, _) = quotient(a, b)?;
    let l = q.exponent();
    if !m.ring().is_unit_u64(l) {
        return Err(Error::Precondition(format!(
            "the quotient has exponent {l}, which is not a unit of {}",
            m.ring()
        )));
    }
    Ok(l)
}

fn whole(g: &GroupTable) -> Result<Subgroup> {
    subgroup_generated(g, g.generators())
}

fn describe_map<T: Scalar>(f: &ModuleMap<T>) -> String {
    format!("{} -> {}", f.domain(), f.codomain())
}

/// For abelian `A`, `B ≤ A` with `A/B` torsion of exponent invertible in the
/// ring, and `n ≤ n_max`: the maps `H_n(A, M_B) → H_n(A, M_A)` and
/// `H^n(A, M^A) → H^n(A, M^B)` are isomorphisms, `H_n(B, M_B)_A → H_n(B, M_A)`
/// is an isomorphism, and `E²_{p,q}` vanishes for `p ∈ {1, 2}`.
pub fn verify_theorem_ab<T: Scalar>(m: &GModule<T>, b: &Subgroup, n_max: usize, budget: usize) -> Result<Vec<Check>> {
    check_hypotheses(m, b)?;
    let a = m.group();
    let all = whole(a)?;
    let (m_b, _, section_b) = m.coinvariants_under(b)?;
    let (m_a, proj_a, _) = m.coinvariants_under(&all)?;
    let to_a = ModuleMap::new(m_b.module().clone(), m_a.module().clone(), proj_a.matrix().mul(&section_b)?)?;
    let (inv_b, inc_b) = m.invariants_under(b)?;
    let (inv_a, inc_a) = m.invariants_under(&all)?;
    let from_a = inc_a.factor_through(&inc_b)?;
    let id = GroupHom::identity(a);
    let mut checks = Vec::new();
    for n in 0..=n_max {
        let f = induced(&id, &to_a, &m_b, &m_a, n, Variance::Homology, budget)?;
        checks.push(Check::new(
            format!("H_{n}(A, M_B) -> H_{n}(A, M_A) iso"),
            f.is_isomorphism()?,
            describe_map(&f),
        ));
        let g = induced(&id, &from_a, &inv_a, &inv_b, n, Variance::Cohomology, budget)?;
        checks.push(Check::new(
            format!("H^{n}(A, M^A) -> H^{n}(A, M^B) iso"),
            g.is_isomorphism()?,
            describe_map(&g),
        ));
        checks.push(b_m_a(&m_b, &m_a, &to_a, b, n, budget)?);
    }
    for p in 1..=2 {
        for q in 0..=n_max {
            let e = lhs_e2(&m_b, b, p, q, budget)?;
            checks.push(Check::new(
                format!("E2[{p},{q}] = 0"),
                e.module.is_zero(),
                e.module.to_string(),
            ));
        }
    }
    Ok(checks)
}

/// `H_n(B, M_B)_A → H_n(B, M_A)` is an isomorphism.
fn b_m_a<T: Scalar>(
    m_b: &GModule<T>,
    m_a: &GModule<T>,
    to_a: &ModuleMap<T>,
    b: &Subgroup,
    n: usize,
    budget: usize,
) -> Result<Check> {
    let (coeff, _) = coefficient_module_on_homology(m_b, b, n, budget)?;
    let id_b = GroupHom::identity(&b.table());
    let psi = induced(&id_b, to_a, &m_b.restrict(b)?, &m_a.restrict(b)?, n, Variance::Homology, budget)?;
    if !psi.domain().same_structure(coeff.module()) {
        return Err(Error::BrokenComplex("inconsistent homology coordinates".into()));
    }
    let (coinv, _) = coeff.coinvariants()?;
    let bar = ModuleMap::new(coinv, psi.codomain().clone(), psi.matrix().clone())?;
    Ok(Check::new(
        format!("H_{n}(B, M_B)_A -> H_{n}(B, M_A) iso"),
        bar.is_isomorphism()?,
        describe_map(&bar),
    ))
}

/// When `B` acts trivially on `M`: `H_n(A, M) → H_n(A, M_A)` is an
/// isomorphism for `n ≤ n_max`.
pub fn verify_trivial_subgroup_case<T: Scalar>(
    m: &GModule<T>,
    b: &Subgroup,
    n_max: usize,
    budget: usize,
) -> Result<Vec<Check>> {
    check_hypotheses(m, b)?;
    if !m.restrict(b)?.is_trivial_action()? {
        return Err(Error::Precondition("the subgroup does not act trivially".into()));
    }
    let a = m.group();
    let (m_a, proj, _) = m.coinvariants_under(&whole(a)?)?;
    let id = GroupHom::identity(a);
    let mut checks = Vec::new();
    for n in 0..=n_max {
        let f = induced(&id, &proj, m, &m_a, n, Variance::Homology, budget)?;
        checks.push(Check::new(
            format!("H_{n}(A, M) -> H_{n}(A, M_A) iso"),
            f.is_isomorphism()?,
            describe_map(&f),
        ));
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mat::DEFAULT_CELL_BUDGET;
    use crate::algebra::RingSpec;
    use crate::gmodules::random_module;
    use crate::groups::{cyclic, dihedral, direct_product, quaternion, symmetric};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const B: usize = DEFAULT_CELL_BUDGET;

    fn free(ring: RingSpec) -> PresentedModule<i64> {
        PresentedModule::free(ring, 1)
    }

    fn trivial(g: &GroupTable, ring: RingSpec) -> GModule<i64> {
        GModule::trivial(g, &free(ring)).unwrap()
    }

    fn negation(m: usize, ring: RingSpec) -> GModule<i64> {
        GModule::new(&cyclic(m).unwrap(), &free(ring), &[Mat::from_i64_rows(&[&[-1]])]).unwrap()
    }

    fn factors(h: &HomologySummary<i64>) -> (Vec<i64>, usize) {
        (h.invariant_factors().to_vec(), h.free_rank())
    }

    #[test]
    fn homology_examples() {
        let z2 = cyclic(2).unwrap();
        assert!(h(&trivial(&z2, RingSpec::with_inverted(2)), 1, B).unwrap().is_zero());
        for m in 2..=7 {
            let g = cyclic(m).unwrap();
            let z = trivial(&g, RingSpec::Integers);
            assert_eq!(factors(&h(&z, 1, B).unwrap()), (vec![m as i64], 0));
            assert_eq!(factors(&hc(&z, 2, B).unwrap()), (vec![m as i64], 0));
        }
    }

    #[test]
    fn bar_and_product_agree() {
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let m = trivial(&g, RingSpec::Integers);
        for n in 0..3 {
            for v in [Variance::Homology, Variance::Cohomology] {
                let bar = compute(&m, n, v, Method::Bar, B).unwrap().summary;
                let prod = compute(&m, n, v, Method::Product, B).unwrap().summary;
                assert_eq!(factors(&bar), factors(&prod), "{v:?} {n}");
            }
        }
    }

    #[test]
    fn identity_induces_identity() {
        let g = symmetric(3).unwrap();
        let m = trivial(&g, RingSpec::Integers);
        let id = GroupHom::identity(&g);
        let f = ModuleMap::identity(m.module());
        for v in [Variance::Homology, Variance::Cohomology] {
            assert!(induced(&id, &f, &m, &m, 1, v, B).unwrap().is_identity().unwrap());
        }
    }

    #[test]
    fn inclusion_of_trivial_group_in_degree_zero() {
        // {0} ↪ Z/2 on M = Z with negation: H_0 map is M ↠ M_G = Z/2
        let g = cyclic(2).unwrap();
        let m = negation(2, RingSpec::Integers);
        let t = GroupTable::trivial();
        let inc = GroupHom::new(t.clone(), g.clone(), vec![0]).unwrap();
        let src = m.pullback(&inc).unwrap();
        let f = induced(&inc, &ModuleMap::identity(m.module()), &src, &m, 0, Variance::Homology, B).unwrap();
        assert!(f.is_surjective().unwrap());
        assert_eq!(f.codomain().invariant_factors(), &[2]);
        assert_eq!(f.domain().free_rank(), 1);
    }

    #[test]
    fn equivariance_is_enforced() {
        let g = cyclic(2).unwrap();
        let m = negation(2, RingSpec::Integers);
        let z = trivial(&g, RingSpec::Integers);
        let id = GroupHom::identity(&g);
        let f = ModuleMap::identity(z.module());
        let err = induced(&id, &f, &z, &m, 0, Variance::Homology, B).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn induced_is_functorial() {
        // Z/4 → Z/2 → Z/2 (projection then identity), coefficients Z trivial
        let z4 = cyclic(4).unwrap();
        let z2 = cyclic(2).unwrap();
        let p = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let sq = GroupHom::new(z4.clone(), z4.clone(), vec![0, 3, 2, 1]).unwrap();
        let m4 = trivial(&z4, RingSpec::Integers);
        let m2 = trivial(&z2, RingSpec::Integers);
        let id = ModuleMap::identity(m4.module());
        let two = ModuleMap::scalar(m4.module(), 2);
        let first = induced(&sq, &two, &m4, &m4, 1, Variance::Homology, B).unwrap();
        let second = induced(&p, &id, &m4, &m2, 1, Variance::Homology, B).unwrap();
        let both = induced(&p.after(&sq).unwrap(), &two, &m4, &m2, 1, Variance::Homology, B).unwrap();
        assert!(second.after(&first).unwrap().equals(&both).unwrap());
    }

    #[test]
    fn conjugation_pair_is_identity() {
        let s3 = symmetric(3).unwrap();
        let t = (1..6).find(|&g| s3.element_order(g) == 2).unwrap();
        let z = trivial(&s3, RingSpec::Integers);
        let f = conjugation_pair_action(&z, t, 1, Variance::Homology, B).unwrap();
        assert_eq!(f.domain().invariant_factors(), &[2]);
        assert!(f.is_identity().unwrap());
        let d4 = dihedral(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m: GModule<i64> = random_module(&cyclic(4).unwrap(), RingSpec::Integers, &mut rng).unwrap();
        for g0 in 0..4 {
            for v in [Variance::Homology, Variance::Cohomology] {
                assert!(conjugation_pair_action(&m, g0, 2, v, B).unwrap().is_identity().unwrap());
            }
        }
        let z = trivial(&d4, RingSpec::Integers);
        for g0 in 0..8 {
            assert!(conjugation_pair_action(&z, g0, 2, Variance::Homology, B).unwrap().is_identity().unwrap());
        }
    }

    #[test]
    fn batch_conjugation_pairs_match() {
        let q8 = quaternion().unwrap();
        let z = trivial(&q8, RingSpec::Integers);
        for v in [Variance::Homology, Variance::Cohomology] {
            let all = conjugation_pair_actions(&z, 1, v, B).unwrap();
            assert_eq!(all.len(), 8);
            for (g0, f) in all.iter().enumerate() {
                assert!(f.is_identity().unwrap());
                assert!(f.equals(&conjugation_pair_action(&z, g0, 1, v, B).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn degree_zero_comparisons() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        for _ in 0..4 {
            let m: GModule<i64> = random_module(&g, RingSpec::Integers, &mut rng).unwrap();
            assert!(h0_comparison(&m, B).unwrap().is_isomorphism().unwrap());
            assert!(h0_cohomology_comparison(&m, B).unwrap().is_isomorphism().unwrap());
        }
        let m = negation(2, RingSpec::Integers);
        assert_eq!(h0_comparison(&m, B).unwrap().codomain().invariant_factors(), &[2]);
    }

    #[test]
    fn abelianization_comparison() {
        for g in [symmetric(3).unwrap(), quaternion().unwrap(), cyclic(6).unwrap(), symmetric(4).unwrap()] {
            let f = h1_abelianization_comparison::<i64>(&g, B).unwrap();
            assert!(f.is_isomorphism().unwrap());
        }
    }

    #[test]
    fn coefficient_module_examples() {
        // A = Z/4, B = {0,2}, M = Z[1/2] with generator acting by -1, q = 0:
        // M_B = M, and the generator of A/B acts by -1
        let r = RingSpec::with_inverted(2);
        let m = GModule::new(&cyclic(4).unwrap(), &free(r), &[Mat::from_i64_rows(&[&[-1]])]).unwrap();
        let b = subgroup_generated(m.group(), &[2]).unwrap();
        let (c, _) = coefficient_module_on_homology(&m, &b, 0, B).unwrap();
        assert_eq!(c.module().free_rank(), 1);
        assert_eq!(c.action(1), &Mat::from_i64_rows(&[&[-1]]));
        assert!(c.coinvariants().unwrap().0.is_zero());
        // B = A: the quotient is trivial
        let all = whole(m.group()).unwrap();
        let (c, _) = coefficient_module_on_homology(&m, &all, 1, B).unwrap();
        assert_eq!(c.group().order(), 1);
    }

    #[test]
    fn e2_examples() {
        let r = RingSpec::with_inverted(2);
        let m = GModule::new(&cyclic(4).unwrap(), &free(r), &[Mat::from_i64_rows(&[&[-1]])]).unwrap();
        let b = subgroup_generated(m.group(), &[2]).unwrap();
        for p in 1..=2 {
            for q in 0..=2 {
                assert!(lhs_e2(&m, &b, p, q, B).unwrap().module.is_zero());
            }
        }
        // over Z the p = 1 column need not vanish
        let mz = GModule::trivial(&cyclic(4).unwrap(), &free(RingSpec::Integers)).unwrap();
        let bz = subgroup_generated(mz.group(), &[2]).unwrap();
        assert_eq!(lhs_e2(&mz, &bz, 1, 0, B).unwrap().module.invariant_factors(), &[2]);
    }

    #[test]
    fn uct_examples() {
        let z2 = cyclic(2).unwrap();
        let m = PresentedModule::from_cyclic_orders(RingSpec::Integers, &[2i64]).unwrap();
        for n in 1..=2 {
            let rep = uct_check(&z2, &m, n, B).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.lhs.invariant_factors(), &[2]);
        }
        let r = free(RingSpec::Integers);
        let rep = uct_check(&symmetric(3).unwrap(), &r, 3, B).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lhs.invariant_factors(), &[6]);
    }

    #[test]
    fn theorem_examples() {
        let r = RingSpec::with_inverted(2);
        let m = GModule::new(&cyclic(4).unwrap(), &free(r), &[Mat::from_i64_rows(&[&[-1]])]).unwrap();
        let b = subgroup_generated(m.group(), &[2]).unwrap();
        let checks = verify_theorem_ab(&m, &b, 1, B).unwrap();
        assert!(all_pass(&checks), "{checks:?}");
        let all = whole(m.group()).unwrap();
        assert!(all_pass(&verify_theorem_ab(&m, &all, 2, B).unwrap()));
        let r3 = RingSpec::with_inverted(3);
        let m = GModule::new(&cyclic(6).unwrap(), &free(r3), &[Mat::from_i64_rows(&[&[-1]])]).unwrap();
        let b = subgroup_generated(m.group(), &[3]).unwrap();
        assert!(all_pass(&verify_theorem_ab(&m, &b, 1, B).unwrap()));
    }

    #[test]
    fn theorem_hypotheses() {
        let m = GModule::new(&cyclic(4).unwrap(), &free(RingSpec::Integers), &[Mat::from_i64_rows(&[&[-1]])]).unwrap();
        let b = subgroup_generated(m.group(), &[2]).unwrap();
        assert!(matches!(verify_theorem_ab(&m, &b, 1, B), Err(Error::Precondition(_))));
        let s3 = trivial(&symmetric(3).unwrap(), RingSpec::with_inverted(6));
        let b = subgroup_generated(s3.group(), &[]).unwrap();
        assert!(matches!(verify_theorem_ab(&s3, &b, 1, B), Err(Error::Precondition(_))));
    }

    #[test]
    fn trivial_subgroup_case() {
        // Z/2 x Z/2 with the first factor acting trivially, second by -1
        let g = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let r = RingSpec::with_inverted(2);
        let m = GModule::new(&g, &free(r), &[Mat::identity(1), Mat::from_i64_rows(&[&[-1]])]).unwrap();
        let first = g.generators()[0];
        let b = subgroup_generated(&g, &[first]).unwrap();
        assert!(all_pass(&verify_trivial_subgroup_case(&m, &b, 2, B).unwrap()));
        let other = subgroup_generated(&g, &[g.generators()[1]]).unwrap();
        assert!(verify_trivial_subgroup_case(&m, &other, 1, B).is_err());
    }

    #[test]
    fn torsion_cobar_stays_in_machine_integers() {
        // Z/2 + Z/4 + Z/16 pulled back to S3: entries used to outgrow i64
        let g = symmetric(3).unwrap();
        let ab = crate::groups::abelianization::<i64>(&g).unwrap();
        let q = random_module::<i64, _>(&ab.quotient, RingSpec::Integers, &mut ChaCha8Rng::seed_from_u64(895)).unwrap();
        let m = q.pullback(&ab.projection).unwrap();
        assert_eq!(hc(&m, 1, B).unwrap().invariant_factors(), &[2]);
        assert_eq!(hc(&m, 2, B).unwrap().invariant_factors(), &[2]);
        assert!(conjugation_pair_action(&m, 3, 1, Variance::Cohomology, B).unwrap().is_identity().unwrap());
    }
}

//! What each claim computes and checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::input::{GroupSpec, MatrixGroupSpec, ModuleSpec};
use super::{Claim, Outcome, RunOptions, Scenario};
use crate::algebra::mat::Mat;
use crate::algebra::module::PresentedModule;
use crate::algebra::ring::RingSpec;
use crate::complexes::{homology, periodic_complex, Orientation};
use crate::error::{Error, Result};
use crate::gmodules::{ext, ext_comparison, random_module, tor, tor_comparison, GModule};
use crate::group_homology::{
    check_hypotheses, compute, conjugation_pair_actions, h, hc, lhs_e2, uct_check, verify_theorem_ab,
    verify_trivial_subgroup_case, Check, Method, Variance,
};
use crate::groups::{abelianization, cyclic, quotient, subgroup_generated, GroupTable, Subgroup};
use crate::linear_groups::{build_group, verify_delta_split, verify_gamma_exact, verify_unit_power_trivial, MatrixKind};
use crate::scalar::Scalar;

pub(crate) fn execute<T: Scalar>(sc: &Scenario, opts: &RunOptions) -> Result<Outcome> {
    let ring = match &sc.ring {
        Some(r) => r.ring()?,
        None => RingSpec::Integers,
    };
    let b = opts.budget;
    match sc.claim {
        Claim::Lemma11 => lemma_1_1::<T>(sc, ring, opts),
        Claim::Cor12 => cor_1_2::<T>(sc, ring, opts),
        Claim::Lemma13 => lemma_1_3::<T>(sc, ring, opts),
        Claim::Example1 => example_1::<T>(sc, ring),
        Claim::Theorem14 => {
            let (g, m, sub) = with_subgroup::<T>(sc, ring, opts, false)?;
            let mut o = Outcome::default();
            o.values.insert("subgroup_order".into(), json!(sub.order()));
            o.checks = verify_theorem_ab(&m, &sub, sc.degree.unwrap_or(2), b)?;
            o.values.insert("group_order".into(), json!(g.order()));
            Ok(o)
        }
        Claim::Cor15Finite => {
            let (_, m, sub) = with_subgroup::<T>(sc, ring, opts, true)?;
            let mut o = Outcome::default();
            o.values.insert("subgroup_order".into(), json!(sub.order()));
            o.checks = verify_trivial_subgroup_case(&m, &sub, sc.degree.unwrap_or(2), b)?;
            Ok(o)
        }
        Claim::Uct => uct::<T>(sc, ring, opts),
        Claim::E2Vanishing => e2_vanishing::<T>(sc, ring, opts),
        Claim::InnerAction => inner_action::<T>(sc, ring, opts),
        Claim::GammaExact => {
            let s = matrix_spec(sc)?;
            let (counts, checks) = verify_gamma_exact(s.n, s.m, opts.group_bound)?;
            let mut o = Outcome { checks, ..Default::default() };
            o.values.insert("mu".into(), json!(counts.mu));
            o.values.insert("kernel".into(), json!(counts.kernel));
            o.values.insert("image".into(), json!(counts.image));
            o.values.insert("cokernel".into(), json!(counts.cokernel));
            Ok(o)
        }
        Claim::DeltaSplit => {
            let s = matrix_spec(sc)?;
            let checks = verify_delta_split::<T>(s.n, s.m, opts.group_bound, b)?;
            Ok(Outcome { checks, ..Default::default() })
        }
        Claim::UnitPowerTrivial => unit_power::<T>(sc, opts),
        Claim::OracleCyclic => oracle_cyclic::<T>(sc, ring, opts),
    }
}

/// Invariant factors followed by a `0` per free summand.
pub fn module_value<T: Scalar>(m: &PresentedModule<T>) -> Value {
    let mut v: Vec<Value> = m.invariant_factors().iter().map(scalar_value).collect();
    v.extend(std::iter::repeat(json!(0)).take(m.free_rank()));
    Value::Array(v)
}

fn scalar_value<T: Scalar>(x: &T) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn group_of(sc: &Scenario, opts: &RunOptions) -> Result<GroupTable> {
    sc.group
        .as_ref()
        .ok_or_else(|| Error::Input(format!("claim {} needs a group", sc.claim)))?
        .build(opts.group_bound)
}

fn rng_for(sc: &Scenario, stream: u64) -> Option<ChaCha8Rng> {
    sc.seed.map(|s| {
        let mut r = ChaCha8Rng::seed_from_u64(s);
        r.set_stream(stream);
        r
    })
}

/// A random module for any finite group, pulled back from its
/// abelianization when the group is not abelian.
pub(crate) fn random_on<T: Scalar>(g: &GroupTable, ring: RingSpec, rng: &mut ChaCha8Rng) -> Result<GModule<T>> {
    if g.is_abelian() {
        return random_module(g, ring, rng);
    }
    let ab = abelianization::<T>(g)?;
    random_module::<T, _>(&ab.quotient, ring, rng)?.pullback(&ab.projection)
}

fn module_of<T: Scalar>(sc: &Scenario, g: &GroupTable, ring: RingSpec) -> Result<GModule<T>> {
    if let Some(spec) = &sc.module {
        return spec.build(g, ring);
    }
    match rng_for(sc, 0) {
        Some(mut rng) => random_on(g, ring, &mut rng),
        None => GModule::trivial(g, &PresentedModule::free(ring, 1)),
    }
}

fn require_order_unit(g: &GroupTable, ring: RingSpec) -> Result<()> {
    if !ring.is_unit_u64(g.order() as u64) {
        return Err(Error::Precondition(format!("|G| = {} is not a unit of {ring}", g.order())));
    }
    Ok(())
}

fn lemma_1_1<T: Scalar>(sc: &Scenario, ring: RingSpec, opts: &RunOptions) -> Result<Outcome> {
    let g = group_of(sc, opts)?;
    let m = module_of::<T>(sc, &g, ring)?;
    require_order_unit(&g, ring)?;
    let alpha = m.alpha()?;
    let (na, an) = m.norm_alpha_identities()?;
    let mut o = Outcome::default();
    o.values.insert("M".into(), module_value(m.module()));
    o.values.insert("M^G".into(), module_value(alpha.domain()));
    o.values.insert("M_G".into(), module_value(alpha.codomain()));
    o.checks.push(Check::new("alpha_iso", alpha.is_isomorphism()?, format!("{} -> {}", alpha.domain(), alpha.codomain())));
    o.checks.push(Check::new("norm_after_alpha", na, format!("equals {} on M^G", g.order())));
    o.checks.push(Check::new("alpha_after_norm", an, format!("equals {} on M_G", g.order())));
    Ok(o)
}

fn cor_1_2<T: Scalar>(sc: &Scenario, ring: RingSpec, opts: &RunOptions) -> Result<Outcome> {
    let g = group_of(sc, opts)?;
    let m = module_of::<T>(sc, &g, ring)?;
    require_order_unit(&g, ring)?;
    let mut o = Outcome::default();
    for n in 1..=sc.degree.unwrap_or(3).max(1) {
        let hn = h(&m, n, opts.budget)?;
        let cn = hc(&m, n, opts.budget)?;
        o.values.insert(format!("H_{n}"), module_value(hn.module()));
        o.values.insert(format!("H^{n}"), module_value(cn.module()));
        o.checks.push(Check::new(format!("H_{n} = 0"), hn.is_zero(), hn.module().to_string()));
        o.checks.push(Check::new(format!("H^{n} = 0"), cn.is_zero(), cn.module().to_string()));
    }
    Ok(o)
}

/// `N`: the given coefficients, else a seeded random plain module, else
/// `Z/2 ⊕ Z/3 ⊕ Z`.
fn coefficients_of<T: Scalar>(sc: &Scenario, ring: RingSpec) -> Result<PresentedModule<T>> {
    if let Some(spec) = &sc.coefficients {
        return spec.plain(ring);
    }
    let spec = match rng_for(sc, 1) {
        Some(mut rng) => {
            let rank = rng.gen_range(1..=2usize);
            let choices = [0i64, 2, 3, 4, 5, 6, 8, 9, 12];
            let relations = (0..rank)
                .map(|i| {
                    let mut row = vec![0i64; rank];
                    row[i] = choices[rng.gen_range(0..choices.len())];
                    row
                })
                .collect();
            ModuleSpec { ambient_rank: rank, relations, action: Default::default() }
        }
        None => ModuleSpec {
            ambient_rank: 3,
            relations: vec![vec![2, 0, 0], vec![0, 3, 0]],
            action: Default::default(),
        },
    };
    spec.plain(ring)
}

fn lemma_1_3<T: Scalar>(sc: &Scenario, ring: RingSpec, opts: &RunOptions) -> Result<Outcome> {
    let g = group_of(sc, opts)?;
    let m = module_of::<T>(sc, &g, ring)?;
    let n = coefficients_of::<T>(sc, ring)?;
    require_order_unit(&g, ring)?;
    let mut o = Outcome::default();
    o.values.insert("N".into(), module_value(&n));
    o.values.insert("M".into(), module_value(m.module()));
    for deg in 0..=1 {
        let t = tor_comparison(deg, &n, &m)?;
        let e = ext_comparison(deg, &n, &m)?;
        o.values.insert(format!("Tor_{deg}(N,M)_G"), module_value(t.domain()));
        o.values.insert(format!("Tor_{deg}(N,M_G)"), module_value(t.codomain()));
        o.values.insert(format!("Ext^{deg}(N,M^G)"), module_value(e.domain()));
        o.values.insert(format!("Ext^{deg}(N,M)^G"), module_value(e.codomain()));
        o.checks.push(Check::new(format!("tor_{deg}_comparison_iso"), t.is_isomorphism()?, format!("{} -> {}", t.domain(), t.codomain())));
        o.checks.push(Check::new(format!("ext_{deg}_comparison_iso"), e.is_isomorphism()?, format!("{} -> {}", e.domain(), e.codomain())));
    }
    Ok(o)
}

/// `Z/2` acting on `Z` by negation, with `N = Z/2`.
fn example_1<T: Scalar>(sc: &Scenario, ring: RingSpec) -> Result<Outcome> {
    let g = cyclic(2)?;
    let z = PresentedModule::<T>::free(ring, 1);
    let m = GModule::new(&g, &z, &[Mat::scalar(1, T::from_i64_c(-1))])?;
    let n = PresentedModule::<T>::from_cyclic_orders(ring, &[T::from_i64_c(2)])?;
    let (coinv, _) = m.coinvariants()?;
    let (inv, _) = m.invariants()?;
    let tor_g = tor(1, &n, &m)?.gmodule.coinvariants()?.0;
    let tor_of_coinv = tor(1, &n, &GModule::trivial(&g, &coinv)?)?.gmodule.module().clone();
    let ext_of_inv = ext(1, &n, &GModule::trivial(&g, &inv)?)?.gmodule.module().clone();
    let ext_g = ext(1, &n, &m)?.gmodule.invariants()?.0;
    let tor_map = tor_comparison(1, &n, &m)?;
    let ext_map = ext_comparison(1, &n, &m)?;

    let values = [
        ("M_G", &coinv, vec![2i64]),
        ("M^G", &inv, vec![]),
        ("Tor_1(Z/2,M)_G", &tor_g, vec![]),
        ("Tor_1(Z/2,M_G)", &tor_of_coinv, vec![2]),
        ("Ext^1(Z/2,M^G)", &ext_of_inv, vec![]),
        ("Ext^1(Z/2,M)^G", &ext_g, vec![2]),
    ];
    let mut o = Outcome::default();
    let hypothesis = ring.is_unit_u64(2);
    o.values.insert("hypothesis_holds".into(), json!(hypothesis));
    for (name, module, expected) in &values {
        o.values.insert((*name).into(), module_value(module));
        if !hypothesis {
            let got = module_value(*module);
            o.checks.push(Check::new(
                format!("{name} = {expected:?}"),
                got == json!(expected),
                format!("computed {got}"),
            ));
        }
    }
    let (t_iso, e_iso) = (tor_map.is_isomorphism()?, ext_map.is_isomorphism()?);
    o.values.insert("comparisons_iso".into(), json!(t_iso && e_iso));
    if !hypothesis && sc.expect_precondition_failure {
        o.checks.push(Check::new("tor_comparison_not_iso", !t_iso, "Tor_1(Z/2,M)_G -> Tor_1(Z/2,M_G)"));
        o.checks.push(Check::new("ext_comparison_not_iso", !e_iso, "Ext^1(Z/2,M^G) -> Ext^1(Z/2,M)^G"));
    } else {
        o.checks.push(Check::new("tor_comparison_iso", t_iso, "Tor_1(Z/2,M)_G -> Tor_1(Z/2,M_G)"));
        o.checks.push(Check::new("ext_comparison_iso", e_iso, "Ext^1(Z/2,M^G) -> Ext^1(Z/2,M)^G"));
    }
    o.violated = (!hypothesis).then(|| format!("2 is not a unit of {ring}"));
    Ok(o)
}

/// Group, module and subgroup (default: the whole group). With
/// `trivial_on_subgroup`, a seeded random module is pulled back from the
/// quotient so that the subgroup acts trivially.
fn with_subgroup<T: Scalar>(
    sc: &Scenario,
    ring: RingSpec,
    opts: &RunOptions,
    trivial_on_subgroup: bool,
) -> Result<(GroupTable, GModule<T>, Subgroup)> {
    let g = group_of(sc, opts)?;
    let sub = match &sc.subgroup {
        Some(s) => s.build(&g)?,
        None => subgroup_generated(&g, g.generators())?,
    };
    let m = match (&sc.module, rng_for(sc, 0)) {
        (None, Some(mut rng)) if trivial_on_subgroup => {
            if !sub.is_normal() {
                return Err(Error::Precondition("the subgroup is not normal".into()));
            }
            let (q, proj) = quotient(&g, &sub)?;
            random_on::<T>(&q, ring, &mut rng)?.pullback(&proj)?
        }
        _ => module_of::<T>(sc, &g, ring)?,
    };
    Ok((g, m, sub))
}

fn uct<T: Scalar>(sc: &Scenario, ring: RingSpec, opts: &RunOptions) -> Result<Outcome> {
    let g = group_of(sc, opts)?;
    let m = match (&sc.module, rng_for(sc, 0)) {
        (Some(spec), _) => spec.plain::<T>(ring)?,
        (None, Some(mut rng)) => random_on::<T>(&g, ring, &mut rng)?.module().clone(),
        (None, None) => PresentedModule::free(ring, 1),
    };
    let mut o = Outcome::default();
    o.values.insert("M".into(), module_value(&m));
    for n in 0..=sc.degree.unwrap_or(2) {
        let r = uct_check(&g, &m, n, opts.budget)?;
        o.values.insert(format!("H_{n}"), module_value(&r.lhs));
        o.checks.push(Check::new(format!("uct_{n}"), r.pass, format!("H_{n} = {}, splitting gives {}", r.lhs, r.rhs)));
    }
    Ok(o)
}

fn e2_vanishing<T: Scalar>(sc: &Scenario, ring: RingSpec, opts: &RunOptions) -> Result<Outcome> {
    let (_, m, sub) = with_subgroup::<T>(sc, ring, opts, false)?;
    let l = check_hypotheses(&m, &sub)?;
    let (m_b, _, _) = m.coinvariants_under(&sub)?;
    let mut o = Outcome::default();
    o.values.insert("l".into(), json!(l));
    for p in 1..=2 {
        for q in 0..=sc.degree.unwrap_or(2) {
            let e = lhs_e2(&m_b, &sub, p, q, opts.budget)?;
            o.values.insert(format!("E2[{p},{q}]"), module_value(&e.module));
            o.checks.push(Check::new(format!("E2[{p},{q}] = 0"), e.module.is_zero(), e.module.to_string()));
        }
    }
    Ok(o)
}

fn inner_action<T: Scalar>(sc: &Scenario, ring: RingSpec, opts: &RunOptions) -> Result<Outcome> {
    let g = group_of(sc, opts)?;
    let m = module_of::<T>(sc, &g, ring)?;
    let mut o = Outcome::default();
    for n in 0..=sc.degree.unwrap_or(2) {
        for (v, sym) in [(Variance::Homology, "_"), (Variance::Cohomology, "^")] {
            let maps = conjugation_pair_actions(&m, n, v, opts.budget)?;
            let bad: Vec<usize> = maps
                .iter()
                .enumerate()
                .filter_map(|(g0, f)| match f.is_identity() {
                    Ok(true) => None,
                    _ => Some(g0),
                })
                .collect();
            o.values.insert(format!("H{sym}{n}"), module_value(maps[0].domain()));
            o.checks.push(Check::new(
                format!("H{sym}{n}: identity for all g0"),
                bad.is_empty(),
                format!("{} elements, non-identity at {bad:?}", maps.len()),
            ));
        }
    }
    Ok(o)
}

fn matrix_spec(sc: &Scenario) -> Result<MatrixGroupSpec> {
    match &sc.group {
        Some(GroupSpec::MatrixGroup(s)) => Ok(*s),
        _ => Err(Error::Input(format!("claim {} needs a matrix_group block", sc.claim))),
    }
}

fn unit_power<T: Scalar>(sc: &Scenario, opts: &RunOptions) -> Result<Outcome> {
    let s = matrix_spec(sc)?;
    if s.kind != MatrixKind::SL {
        return Err(Error::Input("unit_power_trivial needs an SL matrix group".into()));
    }
    let g = build_group(s.n, s.m, MatrixKind::SL, opts.group_bound)?;
    let units: Vec<u64> = match sc.unit {
        Some(a) => vec![a],
        None => g.ring().units().to_vec(),
    };
    let q = sc.degree.unwrap_or(1);
    let mut o = Outcome::default();
    o.values.insert("order".into(), json!(g.order()));
    for a in units {
        for c in verify_unit_power_trivial::<T>(a, &g, q, opts.budget)? {
            o.checks.push(Check::new(format!("a = {a}: {}", c.name), c.pass, c.detail));
        }
    }
    Ok(o)
}

fn oracle_cyclic<T: Scalar>(sc: &Scenario, ring: RingSpec, opts: &RunOptions) -> Result<Outcome> {
    let order = match &sc.group {
        Some(GroupSpec::Cyclic(m)) => *m,
        _ => return Err(Error::Input("oracle_cyclic needs a cyclic group".into())),
    };
    let g = cyclic(order)?;
    let m = module_of::<T>(sc, &g, ring)?;
    let top = sc.degree.unwrap_or(3);
    let mut o = Outcome::default();
    for (v, orientation, sym) in [
        (Variance::Homology, Orientation::Chain, "_"),
        (Variance::Cohomology, Orientation::Cochain, "^"),
    ] {
        let periodic = periodic_complex(order, &m, top + 1, orientation)?;
        for n in 0..=top {
            let bar = compute(&m, n, v, Method::Bar, opts.budget)?.summary;
            let per = homology(&periodic, n, opts.budget)?;
            o.values.insert(format!("H{sym}{n}"), module_value(bar.module()));
            o.checks.push(Check::new(
                format!("H{sym}{n}: bar = periodic"),
                bar.module().same_structure(per.module()),
                format!("bar {}, periodic {}", bar.module(), per.module()),
            ));
        }
    }
    Ok(o)
}

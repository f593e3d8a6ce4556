//! The built-in suite and scenario enumeration.

use std::collections::BTreeMap;

use super::input::{GroupSpec, MatrixGroupSpec, ModuleSpec, RingInput, SubgroupSpec};
use super::{Claim, Scenario};
use crate::algebra::ring::RingSpec;
use crate::error::Result;
use crate::groups::{abelian_factor_lists, all_subgroups, quotient};
use crate::linear_groups::MatrixKind;

/// Groups every suite-wide property is checked on, in increasing order.
pub fn suite_groups() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (1..=12).map(GroupSpec::Cyclic).collect();
    for f in [vec![2u64, 2], vec![2, 4], vec![2, 2, 2], vec![3, 3], vec![2, 6], vec![4, 4], vec![2, 2, 4]] {
        v.push(GroupSpec::from_factors(&f));
    }
    v.extend([
        GroupSpec::Symmetric(3),
        GroupSpec::Dihedral(4),
        GroupSpec::Quaternion,
        GroupSpec::Dihedral(5),
        GroupSpec::Alternating(4),
        GroupSpec::Dihedral(6),
        GroupSpec::Symmetric(4),
        matrix(MatrixKind::SL, 2, 2),
        matrix(MatrixKind::SL, 2, 3),
        matrix(MatrixKind::GL, 2, 3),
    ]);
    v
}

fn matrix(kind: MatrixKind, n: usize, m: u64) -> GroupSpec {
    GroupSpec::MatrixGroup(MatrixGroupSpec { kind, n, m })
}

fn ring(r: RingSpec) -> Option<RingInput> {
    Some(r.into())
}

fn negation() -> ModuleSpec {
    ModuleSpec {
        ambient_rank: 1,
        relations: vec![],
        action: BTreeMap::from([("1".to_string(), vec![vec![-1]])]),
    }
}

fn scenario(id: &str, claim: Claim, r: RingSpec, group: GroupSpec) -> Scenario {
    let mut s = Scenario::new(format!("{claim}/{id}"), claim);
    s.ring = ring(r);
    s.group = Some(group);
    s
}

/// A fast suite that exercises every claim at least once.
pub fn builtin_suite() -> Vec<Scenario> {
    use RingSpec::{Integers as Z, Inverted as Zl};
    let mut out = Vec::new();
    let z2 = GroupSpec::Cyclic(2);
    let z2z4 = GroupSpec::from_factors(&[2, 4]);
    let z2z2 = GroupSpec::from_factors(&[2, 2]);

    let mut ex = Scenario::new("example_1/Z", Claim::Example1);
    ex.ring = ring(Z);
    ex.expect_precondition_failure = true;
    out.push(ex);
    let mut ex = Scenario::new("example_1/Z[1/2]", Claim::Example1);
    ex.ring = ring(Zl(2));
    out.push(ex);

    let mut s = scenario("Z6/seed1", Claim::Lemma11, Zl(6), GroupSpec::Cyclic(6));
    s.seed = Some(1);
    out.push(s);
    let mut s = scenario("Z2xZ4/seed2", Claim::Lemma11, Zl(2), z2z4.clone());
    s.seed = Some(2);
    out.push(s);
    let mut s = scenario("Z2/Z", Claim::Lemma11, Z, z2.clone());
    s.module = Some(negation());
    s.expect_precondition_failure = true;
    out.push(s);

    out.push(scenario("S3/trivial", Claim::Cor12, Zl(6), GroupSpec::Symmetric(3)));
    let mut s = scenario("Z4/seed3", Claim::Cor12, Zl(2), GroupSpec::Cyclic(4));
    s.seed = Some(3);
    out.push(s);

    let mut s = scenario("Z3/seed5", Claim::Lemma13, Zl(3), GroupSpec::Cyclic(3));
    s.seed = Some(5);
    s.coefficients = Some(ModuleSpec {
        ambient_rank: 2,
        relations: vec![vec![6, 0]],
        action: BTreeMap::new(),
    });
    out.push(s);

    // B = Z/4 inside Z/2 × Z/4 (element 1 is (0, 1)), quotient of exponent 2
    let mut s = scenario("Z2xZ4/B=Z4/seed4", Claim::Theorem14, Zl(2), z2z4.clone());
    s.subgroup = Some(SubgroupSpec { generators: vec![1] });
    s.seed = Some(4);
    out.push(s);
    let mut s = scenario("Z2xZ2/B=A/seed1", Claim::Theorem14, Z, z2z2.clone());
    s.seed = Some(1);
    out.push(s);

    let mut s = scenario("Z2xZ2/B=Z2/seed6", Claim::Cor15Finite, Zl(2), z2z2.clone());
    s.subgroup = Some(SubgroupSpec { generators: vec![1] });
    s.seed = Some(6);
    out.push(s);

    let mut s = scenario("S3/Z4", Claim::Uct, Z, GroupSpec::Symmetric(3));
    s.module = Some(ModuleSpec { ambient_rank: 1, relations: vec![vec![4]], action: BTreeMap::new() });
    s.degree = Some(3);
    out.push(s);

    // B = Z/3 inside Z/3 × Z/4 (element 4 is (1, 0)), quotient Z/4
    let mut s = scenario("Z3xZ4/B=Z3/seed7", Claim::E2Vanishing, Zl(2), GroupSpec::from_factors(&[3, 4]));
    s.subgroup = Some(SubgroupSpec { generators: vec![4] });
    s.seed = Some(7);
    out.push(s);

    out.push(scenario("S3/trivial", Claim::InnerAction, Z, GroupSpec::Symmetric(3)));
    out.push(scenario("Q8/trivial", Claim::InnerAction, Z, GroupSpec::Quaternion));
    let mut s = scenario("D4/seed2", Claim::InnerAction, Z, GroupSpec::Dihedral(4));
    s.seed = Some(2);
    out.push(s);
    let mut s = scenario("SL2(Z/3)/trivial", Claim::InnerAction, Z, matrix(MatrixKind::SL, 2, 3));
    s.degree = Some(1);
    out.push(s);

    for m in [2, 3, 5] {
        out.push(scenario(&format!("GL2(Z/{m})"), Claim::GammaExact, Z, matrix(MatrixKind::GL, 2, m)));
    }
    for (n, m) in [(1, 5), (2, 2), (2, 3)] {
        out.push(scenario(&format!("GL{n}(Z/{m})"), Claim::DeltaSplit, Z, matrix(MatrixKind::GL, n, m)));
    }
    let mut s = scenario("SL2(Z/3)/a=2", Claim::UnitPowerTrivial, Z, matrix(MatrixKind::SL, 2, 3));
    s.unit = Some(2);
    out.push(s);
    let mut s = scenario("SL2(Z/8)/a=3", Claim::UnitPowerTrivial, Z, matrix(MatrixKind::SL, 2, 8));
    s.unit = Some(3);
    out.push(s);

    let mut s = scenario("Z6/negation/Z", Claim::OracleCyclic, Z, GroupSpec::Cyclic(6));
    s.module = Some(negation());
    out.push(s);
    out.push(scenario("Z5/trivial/Z[1/2]", Claim::OracleCyclic, Zl(2), GroupSpec::Cyclic(5)));

    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerateBounds {
    pub max_order: usize,
    /// Seeds `base_seed .. base_seed + seeds`.
    pub seeds: u64,
    pub base_seed: u64,
}

impl Default for EnumerateBounds {
    fn default() -> Self {
        EnumerateBounds { max_order: 8, seeds: 3, base_seed: 1 }
    }
}

fn abelian_family(max_order: usize) -> Vec<(usize, GroupSpec)> {
    (1..=max_order as u64)
        .flat_map(|n| abelian_factor_lists(n).into_iter().map(move |f| (n as usize, GroupSpec::from_factors(&f))))
        .collect()
}

fn seeded(base: Scenario, b: &EnumerateBounds) -> Vec<Scenario> {
    (b.base_seed..b.base_seed + b.seeds)
        .map(|seed| {
            let mut s = base.clone();
            s.id = format!("{}/seed{seed}", base.id);
            s.seed = Some(seed);
            s
        })
        .collect()
}

/// All scenarios of one claim within the bounds, sorted by id.
pub fn enumerate(claim: Claim, b: &EnumerateBounds) -> Result<Vec<Scenario>> {
    let mut out = Vec::new();
    match claim {
        Claim::Lemma11 | Claim::Cor12 | Claim::Lemma13 => {
            for (order, g) in abelian_family(b.max_order) {
                let s = scenario(&format!("{order:03}/{}", g.name()), claim, RingSpec::with_inverted(order as u64), g);
                out.extend(seeded(s, b));
            }
        }
        Claim::Theorem14 | Claim::E2Vanishing | Claim::Cor15Finite => {
            for (order, g) in abelian_family(b.max_order) {
                let table = g.build(b.max_order.max(1))?;
                for (k, sub) in all_subgroups(&table).iter().enumerate() {
                    let (q, _) = quotient(&table, sub)?;
                    let sub_table = sub.table();
                    let gens = sub_table.generators().iter().map(|&x| sub.inclusion().apply(x)).collect();
                    let mut s = scenario(
                        &format!("{order:03}/{}/B{k:02}", g.name()),
                        claim,
                        RingSpec::with_inverted(q.exponent()),
                        g.clone(),
                    );
                    s.subgroup = Some(SubgroupSpec { generators: gens });
                    out.extend(seeded(s, b));
                }
            }
        }
        Claim::Uct | Claim::InnerAction => {
            for g in suite_groups() {
                let order = g.build(512)?.order();
                if order <= b.max_order {
                    let s = scenario(&format!("{order:03}/{}", g.name()), claim, RingSpec::Integers, g);
                    out.extend(seeded(s, b));
                }
            }
        }
        Claim::Example1 => {
            out.extend(builtin_suite().into_iter().filter(|s| s.claim == Claim::Example1));
        }
        Claim::GammaExact | Claim::DeltaSplit => {
            for n in 1..=2 {
                for m in 2..=b.max_order.max(2) as u64 {
                    let g = matrix(MatrixKind::GL, n, m);
                    out.push(scenario(&format!("n{n}/m{m:02}"), claim, RingSpec::Integers, g));
                }
            }
        }
        Claim::UnitPowerTrivial => {
            for m in 2..=b.max_order.max(2) as u64 {
                let g = matrix(MatrixKind::SL, 2, m);
                out.push(scenario(&format!("n2/m{m:02}"), claim, RingSpec::Integers, g));
            }
        }
        Claim::OracleCyclic => {
            for m in 1..=b.max_order {
                for r in [RingSpec::Integers, RingSpec::Inverted(2), RingSpec::Inverted(6)] {
                    out.push(scenario(&format!("Z{m:02}/trivial/{r}"), claim, r, GroupSpec::Cyclic(m)));
                    if m % 2 == 0 {
                        let mut s = scenario(&format!("Z{m:02}/negation/{r}"), claim, r, GroupSpec::Cyclic(m));
                        s.module = Some(negation());
                        out.push(s);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

use num_traits::Signed;
use serde_json::{json, Value};

use super::{root_sum_family, Check, CheckRecord, Instance, RecordBuilder};
use crate::arith;
use crate::chartab::{Character, Restriction};
use crate::cyclo::{p_power_root_sum_check, siegel_bound_check, Cyclotomic, Rational, RootSumOutcome, SiegelOutcome};
use crate::group::Subgroup;

macro_rules! check {
    ($ty:ident, $id:literal, $desc:literal, $run:ident) => {
        pub struct $ty;
        impl Check for $ty {
            fn id(&self) -> &'static str {
                $id
            }
            fn description(&self) -> &'static str {
                $desc
            }
            fn run(&self, inst: &Instance) -> CheckRecord {
                $run(inst)
            }
        }
    };
}

check!(NormalComplement, "thm1", "the normalizer condition on a Sylow subgroup yields a normal p-complement", run_normal_complement);
check!(PrincipalSections, "lem2.1", "principal-block characters are constant on p-sections with p-nilpotent centralizers", run_principal_sections);
check!(NoFusion, "lem2.2", "no two distinct elements or cyclic subgroups of P are conjugate in G", run_no_fusion);
check!(SplitInnerProduct, "lem2.3/E2", "inner products split over p-regular elements and the Sylow subgroup", run_split_inner_product);
check!(VanishingRootSums, "lem2.4", "vanishing sums of p-power roots of unity have a multiple of p terms", run_vanishing_root_sums);
check!(ResidualDescent, "lem2.5", "the residual generated by p-regular elements inherits the normalizer condition", run_residual_descent);
check!(QuotientDescent, "lem2.6", "quotients inherit the normalizer condition", run_quotient_descent);
check!(NormBound, "sec3/E3", "height-zero principal characters and the norm bound over P", run_norm_bound);
check!(AverageBound, "sec3/E4", "the sum of squared moduli over P without 1 equals |P| - 1", run_average_bound);
check!(RegularNorm, "sec3/E6", "the sum of squared moduli over p-regular elements equals |G:P|", run_regular_norm);
check!(RegularSum, "sec3/E7", "the value sum over P without 1 is -1 and balances the p-regular sum", run_regular_sum);
check!(RegularCount, "sec3/E8", "the number of p-regular elements equals |G:P|", run_regular_count);
check!(TriangleBound, "sec3/E9", "values on p-regular elements are real and nonnegative with the triangle bound tight", run_triangle_bound);
check!(CauchySchwarz, "sec3/E10", "the Cauchy-Schwarz chain over p-regular elements is tight", run_cauchy_schwarz);
check!(TrivialOnRegular, "sec3/closing", "nontrivial principal characters are 1 on every p-regular element", run_trivial_on_regular);
check!(RootValues, "sec3/kronecker", "principal characters take root-of-unity values on P without 1", run_root_values);
check!(TraceBound, "sec1/siegel", "totally positive values other than 1 have conjugate average at least 3/2", run_trace_bound);
check!(ThompsonThird, "sec1/thompson-third", "each irreducible is zero or a root of unity on a third of G", run_thompson_third);

/// The fixed check list in report order.
pub fn standard_checks() -> Vec<Box<dyn Check>> {
    vec![
        Box::new(NormalComplement),
        Box::new(PrincipalSections),
        Box::new(NoFusion),
        Box::new(SplitInnerProduct),
        Box::new(VanishingRootSums),
        Box::new(ResidualDescent),
        Box::new(QuotientDescent),
        Box::new(NormBound),
        Box::new(AverageBound),
        Box::new(RegularNorm),
        Box::new(RegularSum),
        Box::new(RegularCount),
        Box::new(TriangleBound),
        Box::new(CauchySchwarz),
        Box::new(TrivialOnRegular),
        Box::new(RootValues),
        Box::new(TraceBound),
        Box::new(ThompsonThird),
    ]
}

fn int(i: i64) -> Cyclotomic {
    Cyclotomic::from_integer(i)
}

fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn chi(inst: &Instance, i: usize) -> &Character {
    inst.table.character(i)
}

fn sum_over(elements: &[usize], f: impl Fn(usize) -> Cyclotomic) -> Cyclotomic {
    let terms: Vec<Cyclotomic> = elements.iter().map(|&g| f(g)).collect();
    Cyclotomic::sum(&terms)
}

fn sum_p_sharp(inst: &Instance, f: impl Fn(usize) -> Cyclotomic) -> Cyclotomic {
    sum_over(&inst.sylow_nonidentity(), f)
}

/// Sum over p-regular elements, grouped by class.
fn sum_regular(inst: &Instance, f: impl Fn(usize) -> Cyclotomic) -> Cyclotomic {
    let cc = &inst.classes;
    let terms: Vec<Cyclotomic> = (0..cc.len())
        .filter(|&k| !cc.rep_order(k).is_multiple_of(inst.p))
        .map(|k| &f(cc.representative(k)) * &int(cc.size(k) as i64))
        .collect();
    Cyclotomic::sum(&terms)
}

fn has_normal_complement(inst: &Instance, h: &Subgroup) -> bool {
    inst.group.subgroup_as_group(h).0.normal_p_complement(inst.p).is_some()
}

/// Reason the principal-block chain does not apply, if any.
fn chain_precondition(inst: &Instance) -> Option<String> {
    if !inst.hypothesis {
        Some("C_G(P) != N_G(P)".into())
    } else if !inst.divides_order() {
        Some(format!("{} does not divide |G|", inst.p))
    } else {
        None
    }
}

fn run_normal_complement(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("thm1");
    let g = &inst.group;
    let centralizer = g.centralizer(inst.sylow.members());
    let normalizer = g.normalizer(&inst.sylow);
    r.note("hypothesis", inst.hypothesis);
    r.note("sylow_order", inst.sylow.order());
    r.note("centralizer_order", centralizer.order());
    r.note("normalizer_order", normalizer.order());
    r.note("normal_p_complement_order", inst.complement.as_ref().map(Subgroup::order));
    if inst.hypothesis {
        r.expect(inst.complement.is_some(), || "hypothesis holds but no normal p-complement".into());
    }
    if let Some(k) = &inst.complement {
        r.expect(k.order() == inst.sylow_index(), || format!("complement has order {}", k.order()));
        r.expect(g.is_normal(k), || "complement is not normal".into());
        let meet = k.members().iter().filter(|&&x| inst.sylow.contains(x)).count();
        r.expect(meet == 1, || format!("complement meets P in {meet} elements"));
        // informational: the normalizer condition is sufficient, not necessary
        r.note("complement_without_hypothesis", !inst.hypothesis);
    } else {
        r.expect(!inst.hypothesis, || "no complement although the hypothesis holds".into());
    }
    let summary = match (inst.hypothesis, &inst.complement) {
        (true, Some(k)) => format!("C_G(P) = N_G(P) and a normal p-complement of order {} exists", k.order()),
        (false, Some(k)) => format!("hypothesis fails; a normal p-complement of order {} exists anyway", k.order()),
        (false, None) => "hypothesis fails; no normal p-complement".into(),
        (true, None) => "hypothesis holds but no normal p-complement was found".into(),
    };
    r.finish(summary)
}

fn run_principal_sections(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("lem2.1");
    let g = &inst.group;
    let members = inst.principal.character_indices();
    let mut qualifying = 0usize;
    let mut pairs = 0usize;
    let mut verdict_by_class: Vec<Option<bool>> = vec![None; inst.classes.len()];
    for z in g.nonidentity_p_elements(inst.p) {
        let k = inst.classes.class_of(z);
        let cz = g.centralizer(&[z]);
        let ok = *verdict_by_class[k].get_or_insert_with(|| has_normal_complement(inst, &cz));
        if !ok {
            continue;
        }
        qualifying += 1;
        for y in cz.members().iter().copied().filter(|&y| g.is_p_regular(y, inst.p)) {
            let zy = g.mul(z, y);
            for &i in &members {
                pairs += 1;
                let (a, b) = (chi(inst, i).at(zy), chi(inst, i).at(z));
                r.expect(a == b, || format!("character {i}: value {a} at zy differs from {b} at z={z}, y={y}"));
            }
        }
    }
    if qualifying == 0 {
        return r.not_applicable("no nonidentity p-element has a centralizer with a normal p-complement");
    }
    r.note("qualifying_p_elements", qualifying);
    r.note("principal_characters", members.len());
    r.note("section_values_compared", pairs);
    r.finish(format!("principal characters constant on sections of {qualifying} p-elements"))
}

fn run_no_fusion(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("lem2.2");
    if !inst.hypothesis {
        return r.not_applicable("C_G(P) != N_G(P)");
    }
    let g = &inst.group;
    let p_members = inst.sylow.members();
    for &z in p_members {
        let cyclic = g.generated_closure(&[z]);
        for x in g.elements() {
            let w = g.conjugate(z, x);
            if inst.sylow.contains(w) {
                r.expect(w == z, || format!("{z} is conjugate to {w} in P"));
            }
            let image: Vec<usize> = cyclic.members().iter().map(|&u| g.conjugate(u, x)).collect();
            if image.iter().all(|&u| inst.sylow.contains(u)) {
                let same = image.iter().all(|&u| cyclic.contains(u));
                r.expect(same, || format!("<{z}> is conjugate to a different cyclic subgroup of P"));
            }
        }
    }
    r.note("sylow_order", inst.sylow.order());
    r.note("conjugations", p_members.len() * g.order());
    r.finish("no fusion of elements or cyclic subgroups of P")
}

/// Whether `psi(zy) = psi(z)` for all nonidentity p-elements `z` and p-regular `y` in `C_G(z)`.
fn constant_on_sections(inst: &Instance, psi: &Character) -> bool {
    let g = &inst.group;
    g.nonidentity_p_elements(inst.p).into_iter().all(|z| {
        let cz = g.centralizer(&[z]);
        cz.members()
            .iter()
            .filter(|&&y| g.is_p_regular(y, inst.p))
            .all(|&y| psi.at(g.mul(z, y)) == psi.at(z))
    })
}

fn run_split_inner_product(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("lem2.3/E2");
    if !inst.hypothesis {
        return r.not_applicable("C_G(P) != N_G(P)");
    }
    let g = &inst.group;
    let mut classes_seen = vec![false; inst.classes.len()];
    for z in g.nonidentity_p_elements(inst.p) {
        let k = inst.classes.class_of(z);
        if std::mem::replace(&mut classes_seen[k], true) {
            continue;
        }
        if !has_normal_complement(inst, &g.centralizer(&[z])) {
            return r.not_applicable(format!("C_G(z) has no normal p-complement for z = {z}"));
        }
    }
    let functions: Vec<usize> = inst
        .principal
        .character_indices()
        .into_iter()
        .filter(|&i| constant_on_sections(inst, chi(inst, i)))
        .collect();
    r.expect(functions.len() == inst.principal.members.len(), || {
        "a principal-block character is not constant on p-sections".into()
    });
    let n = inst.order() as i64;
    let index = int(inst.sylow_index() as i64);
    let mut evaluated = Vec::new();
    for &i in &functions {
        for &j in &functions {
            let (psi, eta) = (chi(inst, i), chi(inst, j));
            let lhs = &psi.inner_product(eta).expect("same table") * &int(n);
            let regular = sum_regular(inst, |x| psi.at(x) * &eta.at(x).conj());
            let sylow = sum_p_sharp(inst, |x| psi.at(x) * &eta.at(x).conj());
            let rhs = &regular + &(&index * &sylow);
            r.expect_eq(&format!("|G|<psi_{i}, eta_{j}>"), &lhs, &rhs);
            evaluated.push(json!({"psi": i, "eta": j, "lhs": lhs.to_string(), "rhs": rhs.to_string()}));
        }
    }
    // the motivating inequality: (1/|G|) sum_G |z - z(1)|^2 = 1 + z(1)^2, and the
    // Sylow average drops below it once the restriction to P contains 1_P
    let restriction = Restriction::new(g, &inst.sylow);
    let mut e1 = Vec::new();
    for i in inst.nontrivial_principal() {
        let zeta = chi(inst, i);
        let d = zeta.on_class(0).clone();
        let dev = |x: usize| -> Cyclotomic { (zeta.at(x) - &d).norm_abs_squared() };
        let lhs = sum_over(&g.elements().collect::<Vec<_>>(), dev).scale(&ratio(1, n));
        let rhs = sum_over(inst.sylow.members(), dev).scale(&ratio(1, inst.sylow.order() as i64));
        r.expect_eq(&format!("mean square deviation of character {i}"), &lhs, &(&int(1) + &(&d * &d)));
        let restricted = zeta.restrict(&restriction).expect("restriction of a table character");
        let trivial_multiplicity = restricted
            .inner_product(&crate::chartab::ClassFunction::trivial(restricted.classes().clone()))
            .expect("same subgroup");
        if !trivial_multiplicity.is_zero() {
            let (l, rr) = (lhs.as_rational().cloned(), rhs.as_rational().cloned());
            r.expect(matches!((&l, &rr), (Some(l), Some(rr)) if rr < l), || {
                format!("Sylow mean deviation {rhs} of character {i} is not below {lhs}")
            });
        }
        e1.push(json!({
            "character": i,
            "group_mean": lhs.to_string(),
            "sylow_mean": rhs.to_string(),
            "trivial_in_restriction": trivial_multiplicity.to_string(),
        }));
    }
    r.note("pairs", evaluated.len());
    r.note("identities", Value::Array(evaluated));
    r.note("mean_square_deviation", Value::Array(e1));
    r.finish(format!("identity holds for {} pairs from the principal block", functions.len().pow(2)))
}

fn run_vanishing_root_sums(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("lem2.4");
    let p = inst.p;
    let family = root_sum_family(p, inst.seed);
    r.expect(family.violations.is_empty(), || {
        format!("sample family violations: {}", family.violations.join("; "))
    });
    r.note("family", serde_json::to_value(&*family).expect("plain data"));

    // eigenvalue sums: chi(z) for a p-element z is a sum of chi(1) p-power roots
    let g = &inst.group;
    let cc = &inst.classes;
    let mut sums = 0usize;
    for (i, x) in inst.table.irreducibles().iter().enumerate() {
        let d = x.degree().expect("irreducible");
        for k in (1..cc.len()).filter(|&k| g.is_p_element(cc.representative(k), p)) {
            let o = cc.rep_order(k);
            let rep = cc.representative(k);
            let mut terms = Vec::new();
            for l in 0..o {
                let coeff = sum_over(&(0..o as usize).collect::<Vec<_>>(), |j| {
                    let zeta = Cyclotomic::root_of_unity(o, -((j as u64 * l) as i64)).expect("small order");
                    x.at(g.pow(rep, j as u64)) * &zeta
                })
                .scale(&ratio(1, o as i64));
                let Some(m) = coeff.as_integer().filter(|m| *m >= 0) else {
                    r.expect(false, || format!("character {i}: multiplicity {coeff} on class {k}"));
                    continue;
                };
                let root = Cyclotomic::root_of_unity(o, l as i64).expect("small order");
                terms.extend(std::iter::repeat_n(root, m as usize));
            }
            r.expect(terms.len() as u64 == d, || format!("character {i}: {} eigenvalues, degree {d}", terms.len()));
            sums += 1;
            match p_power_root_sum_check(&terms, p) {
                Ok(RootSumOutcome::Zero { count, divisible }) => {
                    r.expect(divisible, || format!("character {i} on class {k}: {count} roots sum to zero"));
                    r.expect(d % p == 0, || format!("character {i} of degree {d} vanishes on class {k}"));
                }
                Ok(RootSumOutcome::Nonzero { sum }) => {
                    r.expect_eq(&format!("eigenvalue sum of character {i} on class {k}"), &sum, x.on_class(k));
                }
                Err(e) => r.expect(false, || format!("character {i} on class {k}: {e}")),
            }
        }
    }
    r.note("eigenvalue_sums", sums);
    r.finish(format!(
        "{} sums of {p}-power roots ({} vanishing) and {sums} eigenvalue sums",
        family.total(),
        family.vanishing
    ))
}

fn run_residual_descent(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("lem2.5");
    let g = &inst.group;
    let simple_nonabelian = !g.is_abelian() && g.normal_subgroups().len() == 2;
    if !inst.hypothesis && !(simple_nonabelian && inst.divides_order()) {
        return r.not_applicable("C_G(P) != N_G(P) and G is not a nonabelian simple group of order divisible by p");
    }
    let residual = g.o_p_residual(inst.p);
    r.note("residual_order", residual.order());
    r.expect(g.is_normal(&residual), || "residual is not normal".into());
    let index = (g.order() / residual.order()) as u64;
    r.expect(arith::p_part(index, inst.p) == index, || format!("G/O^p(G) has order {index}"));
    if simple_nonabelian && inst.divides_order() {
        r.note("simple_nonabelian", true);
        r.expect(residual.order() == g.order(), || "O^p(G) is proper in a simple group".into());
    }
    if inst.hypothesis && residual.order() < g.order() {
        let (sub, embedding) = g.subgroup_as_group(&residual);
        r.expect(sub.burnside_hypothesis(inst.p), || "hypothesis fails in O^p(G)".into());
        match (sub.normal_p_complement(inst.p), &inst.complement) {
            (Some(l), Some(k)) => {
                let image: Vec<usize> = l.members().iter().map(|&x| embedding[x]).collect();
                let image = Subgroup::from_members(g.order(), image);
                r.expect(g.is_normal(&image), || "complement of O^p(G) is not normal in G".into());
                r.expect(image == *k, || "complement of O^p(G) differs from that of G".into());
            }
            _ => r.expect(false, || "missing normal p-complement in O^p(G) or G".into()),
        }
    }
    r.finish(format!("O^p(G) has order {} in G of order {}", residual.order(), g.order()))
}

fn run_quotient_descent(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("lem2.6");
    if !inst.hypothesis {
        return r.not_applicable("C_G(P) != N_G(P)");
    }
    let g = &inst.group;
    let normals = g.normal_subgroups();
    for n in &normals {
        let q = g.quotient(n).expect("normal");
        let image = q.image(&inst.sylow);
        let c = q.group.centralizer(image.members());
        let nq = q.group.normalizer(&image);
        r.expect(c == nq, || {
            format!("quotient by a normal subgroup of order {}: |C| = {}, |N| = {}", n.order(), c.order(), nq.order())
        });
    }
    let center = g.center();
    let central_p = center.order() as u64 / (center.order() as u64 / arith::p_part(center.order() as u64, inst.p));
    r.note("center_order", center.order());
    r.note("center_p_part", central_p);
    // the argument for p not dividing |Z(G)|: a central p-subgroup N splits off
    // the complement of G/N
    for n in normals.iter().filter(|n| n.order() > 1 && n.is_subset_of(&center)) {
        let order = n.order() as u64;
        if arith::p_part(order, inst.p) != order {
            continue;
        }
        let q = g.quotient(n).expect("normal");
        let Some(kq) = q.group.normal_p_complement(inst.p) else {
            r.expect(false, || "G/N has no normal p-complement".into());
            continue;
        };
        let k = q.preimage(&kq);
        match &inst.complement {
            Some(l) => {
                r.expect(l.is_subset_of(&k), || "complement of G is not inside the preimage".into());
                r.expect(k.order() == l.order() * n.order(), || "preimage is not complement times N".into());
            }
            None => r.expect(false, || "G has no normal p-complement".into()),
        }
    }
    r.note("normal_subgroups", normals.len());
    r.finish(format!("hypothesis holds in all {} quotients by normal subgroups", normals.len()))
}

/// Nontrivial principal characters, or the reason the chain does not apply.
fn chain_characters(inst: &Instance, r: &mut RecordBuilder) -> Result<Vec<usize>, String> {
    if let Some(reason) = chain_precondition(inst) {
        return Err(reason);
    }
    let zetas = inst.nontrivial_principal();
    r.expect(!zetas.is_empty(), || "principal block has no nontrivial character".into());
    r.note("characters", zetas.clone());
    Ok(zetas)
}

fn run_norm_bound(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/E3");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let n = int(inst.order() as i64);
    let index = inst.sylow_index() as i64;
    let mut rows = Vec::new();
    for &i in &zetas {
        let zeta = chi(inst, i);
        let height = inst.principal.members.iter().find(|m| m.character == i).map(|m| m.height);
        r.expect(height == Some(0), || format!("character {i} has height {height:?}"));
        let lhs = &zeta.inner_product(zeta).expect("same table") * &n;
        r.expect_eq(&format!("|G|<zeta_{i}, zeta_{i}>"), &lhs, &n);
        let s = sum_p_sharp(inst, |z| zeta.at(z).norm_abs_squared());
        let bound = s.as_rational().map(|s| s * Rational::from_integer(index.into()));
        r.expect(bound.as_ref().is_some_and(|b| *b <= Rational::from_integer((inst.order() as i64).into())), || {
            format!("|G:P| * {s} exceeds |G| for character {i}")
        });
        rows.push(json!({"character": i, "height": height, "sum_over_p_sharp": s.to_string()}));
    }
    r.note("values", Value::Array(rows));
    r.finish(format!("{} nontrivial principal characters, all of height zero", zetas.len()))
}

fn run_average_bound(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/E4");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let target = int(inst.sylow.order() as i64 - 1);
    let units: Vec<u64> = (1..=inst.table.exponent()).filter(|&k| arith::gcd(k, inst.table.exponent()) == 1).collect();
    for &i in &zetas {
        let zeta = chi(inst, i);
        let terms: Vec<Cyclotomic> = inst.sylow_nonidentity().iter().map(|&z| zeta.at(z).norm_abs_squared()).collect();
        for t in &terms {
            r.expect(t.is_algebraic_integer() && t.is_totally_positive(), || {
                format!("|zeta_{i}(z)|^2 = {t} is not a nonzero totally positive integer")
            });
        }
        let mut base: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
        base.sort();
        for &k in &units {
            let mut moved: Vec<String> = terms.iter().map(|t| t.galois(k as i64).to_string()).collect();
            moved.sort();
            r.expect(moved == base, || format!("Galois automorphism {k} does not permute the terms"));
        }
        let s = Cyclotomic::sum(&terms);
        r.expect(s.is_rational_integer(), || format!("sum {s} is not a rational integer"));
        let at_least = s.as_rational().is_some_and(|v| v >= target.as_rational().expect("integer"));
        r.expect(at_least, || format!("sum {s} is below |P| - 1"));
        r.expect_eq(&format!("sum of |zeta_{i}(z)|^2 over P#"), &s, &target);
    }
    r.note("p_minus_one", inst.sylow.order() - 1);
    r.finish(format!("equality with |P| - 1 = {} for every character", inst.sylow.order() - 1))
}

fn run_regular_norm(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/E6");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let index = int(inst.sylow_index() as i64);
    for &i in &zetas {
        let zeta = chi(inst, i);
        let s = sum_regular(inst, |g| zeta.at(g).norm_abs_squared());
        r.expect_eq(&format!("sum of |zeta_{i}|^2 over p-regular elements"), &s, &index);
    }
    r.note("index", inst.sylow_index());
    r.finish(format!("p-regular norm sums equal |G:P| = {}", inst.sylow_index()))
}

fn run_regular_sum(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/E7");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let index = int(inst.sylow_index() as i64);
    let mut values = Vec::new();
    for &i in &zetas {
        let zeta = chi(inst, i);
        let a = sum_p_sharp(inst, |z| zeta.at(z).clone());
        r.expect(a.is_rational_integer(), || format!("a = {a} is not a rational integer"));
        r.expect(!a.is_zero(), || format!("a vanishes for character {i}"));
        r.expect_eq(&format!("a for character {i}"), &a, &int(-1));
        let regular = sum_regular(inst, |g| zeta.at(g).clone());
        r.expect_eq(&format!("-|G:P| a for character {i}"), &-(&index * &a), &regular);
        let with_trivial = &zeta.inner_product(chi(inst, 0)).expect("same table") * &int(inst.order() as i64);
        r.expect_eq(&format!("|G|<zeta_{i}, 1>"), &with_trivial, &(&regular + &(&index * &a)));
        r.expect(with_trivial.is_zero(), || format!("<zeta_{i}, 1> is not zero"));
        values.push(json!({"character": i, "a": a.to_string(), "regular_sum": regular.to_string()}));
    }
    r.note("values", Value::Array(values));
    r.finish("a = -1 and -|G:P| a equals the p-regular value sum")
}

fn run_regular_count(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/E8");
    if let Some(reason) = chain_precondition(inst) {
        return r.not_applicable(reason);
    }
    let n = inst.order();
    let reg = inst.regular.len();
    let index = inst.sylow_index();
    r.note("order", n);
    r.note("p_regular", reg);
    r.note("index", index);
    r.expect(n == reg + index * (inst.sylow.order() - 1), || {
        format!("|G| = {n} but |G°| + |G:P|(|P| - 1) = {}", reg + index * (inst.sylow.order() - 1))
    });
    r.expect(index == reg, || format!("|G:P| = {index} but |G°| = {reg}"));
    if let Some(k) = &inst.complement {
        r.expect(k.members() == inst.regular.as_slice(), || "p-regular set differs from the complement".into());
    }
    r.finish(format!("|G:P| = |G°| = {reg}"))
}

/// Whether every p-regular value of character `i` is real and nonnegative; each miss is recorded.
fn regular_values_nonnegative(inst: &Instance, i: usize, r: &mut RecordBuilder) -> bool {
    let zeta = chi(inst, i);
    let mut ok = true;
    for &g in &inst.regular {
        let v = zeta.at(g);
        let sign = v.real_sign();
        let good = matches!(sign, Some(std::cmp::Ordering::Greater | std::cmp::Ordering::Equal));
        r.expect(good, || format!("zeta_{i}({g}) = {v} is not real and nonnegative"));
        ok &= good;
    }
    ok
}

fn run_triangle_bound(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/E9");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let reg = inst.regular.len() as i64;
    for &i in &zetas {
        if !regular_values_nonnegative(inst, i, &mut r) {
            continue;
        }
        let zeta = chi(inst, i);
        // with every value real and nonnegative, the sum of moduli is the plain sum
        let total = sum_regular(inst, |g| zeta.at(g).clone());
        let a = sum_p_sharp(inst, |z| zeta.at(z).clone());
        let abs_a = a.as_rational().map(|x| x.abs());
        r.expect(abs_a.as_ref().is_some_and(|x| *x >= Rational::from_integer(1.into())), || format!("|a| < 1 for character {i}"));
        if let Some(abs_a) = abs_a {
            r.expect_eq(&format!("|sum zeta_{i}| over p-regular elements"), &total, &Cyclotomic::from_rational(abs_a * Rational::from_integer(reg.into())));
        }
        let at_least = total.as_rational().is_some_and(|t| *t >= Rational::from_integer(reg.into()));
        r.expect(at_least, || format!("sum {total} is below |G°| = {reg}"));
    }
    r.note("p_regular", reg);
    r.finish("values are real and nonnegative on p-regular elements and the triangle bound is an equality")
}

fn run_cauchy_schwarz(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/E10");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let reg = Rational::from_integer((inst.regular.len() as i64).into());
    for &i in &zetas {
        if !regular_values_nonnegative(inst, i, &mut r) {
            continue;
        }
        let zeta = chi(inst, i);
        let squares = sum_regular(inst, |g| zeta.at(g).norm_abs_squared());
        let total = sum_regular(inst, |g| zeta.at(g).clone());
        let (Some(q), Some(t)) = (squares.as_rational().cloned(), total.as_rational().cloned()) else {
            r.expect(false, || format!("sums for character {i} are not rational"));
            continue;
        };
        let middle = &t * &t / &reg;
        r.expect(q == reg, || format!("sum of squares {q} differs from |G°| {reg}"));
        r.expect(q >= middle && middle >= t, || format!("chain {q} >= {middle} >= {t} fails"));
        r.expect(q == middle && middle == t, || format!("chain {q} >= {middle} >= {t} is not tight"));
    }
    r.finish("|G°| = sum |zeta|^2 = (sum |zeta|)^2 / |G°| = sum |zeta|")
}

fn run_trivial_on_regular(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/closing");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let reg = int(inst.regular.len() as i64);
    for &i in &zetas {
        let zeta = chi(inst, i);
        let deviation = sum_regular(inst, |g| (zeta.at(g) - &int(1)).norm_abs_squared());
        r.expect_eq(&format!("sum |zeta_{i} - 1|^2 over p-regular elements"), &deviation, &Cyclotomic::zero());
        let squares = sum_regular(inst, |g| zeta.at(g).norm_abs_squared());
        let total = sum_regular(inst, |g| zeta.at(g).clone());
        let expanded = &(&(&squares - &total) - &total.conj()) + &reg;
        r.expect_eq("expanded deviation", &expanded, &Cyclotomic::zero());
        for &g in &inst.regular {
            r.expect(zeta.at(g).is_one(), || format!("zeta_{i}({g}) = {} is not 1", zeta.at(g)));
        }
        r.expect(zeta.degree() == Some(1), || format!("character {i} is not linear"));
        let kernel = zeta.kernel(&inst.group).expect("table character");
        r.expect(inst.regular.iter().all(|&g| kernel.contains(g)), || format!("G° is not in the kernel of {i}"));
    }
    r.finish("every nontrivial principal character is linear with G° in its kernel")
}

fn run_root_values(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec3/kronecker");
    let zetas = match chain_characters(inst, &mut r) {
        Ok(z) => z,
        Err(reason) => return r.not_applicable(reason),
    };
    let mut orders = std::collections::BTreeSet::new();
    for &i in &zetas {
        let zeta = chi(inst, i);
        for z in inst.sylow_nonidentity() {
            let v = zeta.at(z);
            let order = v.root_of_unity_order();
            r.expect(order.is_some(), || format!("zeta_{i}({z}) = {v} is not a root of unity"));
            if let Some(o) = order {
                r.expect(arith::p_part(o, inst.p) == o, || format!("zeta_{i}({z}) has order {o}"));
                orders.insert(o);
            }
            let unit_modulus = v.galois_conjugates().iter().all(|c| c.norm_abs_squared().is_one());
            r.expect(unit_modulus == order.is_some(), || format!("Kronecker test disagrees at {v}"));
        }
    }
    r.note("value_orders", orders.into_iter().collect::<Vec<_>>());
    r.finish("all values on P# are p-power roots of unity")
}

fn run_trace_bound(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec1/siegel");
    let cc = &inst.classes;
    let (mut ones, mut above) = (0usize, 0usize);
    let mut least: Option<Rational> = None;
    for (i, x) in inst.table.irreducibles().iter().enumerate() {
        for k in 0..cc.len() {
            let v = x.on_class(k);
            if v.is_zero() {
                continue;
            }
            let w = v.norm_abs_squared();
            match siegel_bound_check(&w) {
                Ok(SiegelOutcome::IsOne) => ones += 1,
                Ok(SiegelOutcome::AverageAtLeastThreeHalves(avg)) => {
                    above += 1;
                    if least.as_ref().is_none_or(|l| avg < *l) {
                        least = Some(avg);
                    }
                }
                Ok(other) => r.expect(false, || format!("character {i}, class {k}: {other:?} for {w}")),
                Err(e) => r.expect(false, || format!("character {i}, class {k}: {e}")),
            }
        }
    }
    r.expect(ones + above > 0, || "no nonzero values".into());
    r.note("values_equal_to_one", ones);
    r.note("values_above_one", above);
    r.note("least_average_above_one", least.map(|l| l.to_string()));
    // equality case of the Sylow average bound: every |zeta(z)|^2 on P# is 1
    if chain_precondition(inst).is_none() {
        let mut checked = 0usize;
        for i in inst.nontrivial_principal() {
            for z in inst.sylow_nonidentity() {
                let w = chi(inst, i).at(z).norm_abs_squared();
                checked += 1;
                r.expect(siegel_bound_check(&w) == Ok(SiegelOutcome::IsOne), || {
                    format!("|zeta_{i}({z})|^2 = {w} is not 1")
                });
            }
        }
        r.note("principal_sylow_values", checked);
    }
    r.finish(format!("{} nonzero |chi(g)|^2 values; none below the bound", ones + above))
}

fn run_thompson_third(inst: &Instance) -> CheckRecord {
    let mut r = RecordBuilder::new("sec1/thompson-third");
    let cc = &inst.classes;
    let n = inst.order();
    let mut counts = Vec::new();
    for (i, x) in inst.table.irreducibles().iter().enumerate() {
        let count: usize = (0..cc.len())
            .filter(|&k| {
                let v = x.on_class(k);
                v.is_zero() || v.is_root_of_unity()
            })
            .map(|k| cc.size(k))
            .sum();
        r.expect(3 * count >= n, || format!("character {i} qualifies on {count} of {n} elements"));
        counts.push(count);
    }
    let least = counts.iter().copied().min().unwrap_or(0);
    r.note("qualifying_counts", counts);
    r.note("order", n);
    r.finish(format!("least qualifying count {least} of {n}"))
}

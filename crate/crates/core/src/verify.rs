//! Fixture suite replaying the identities behind the switch computation over
//! parameter sweeps.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{enumerate_j, StructureSet};
use crate::dihedral::{DihedralElement, Untwisted};
use crate::error::Result;
use crate::linking::{
    arf_even, find_lagrangian, make_n, orthogonal_complement, relation_form, resolution_to_linking,
    sublagrangian_reduce,
};
use crate::matrix::Matrix;
use crate::poly::{F2Poly, ZPoly};
use crate::quad_forms::{
    induce_f_form, induce_f_resolution, verify_chain, ChainScript, ChainStep, ChainValue,
    Divergence, GeneratorP, QuadResolution,
};
use crate::ring::InvolutiveRing;
use crate::unil::{enumerate_unil2, enumerate_unil3, n_class_of_sum, pi_map, UNil3Element};

type D = DihedralElement<Untwisted>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureFailure {
    pub instance: String,
    pub detail: String,
    pub divergence: Option<Divergence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub instances: usize,
    pub passed: bool,
    pub failure: Option<FixtureFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub degree: usize,
    pub passed: bool,
    pub fixtures: Vec<FixtureResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Sweep polynomials with {0, 1} coefficients up to this degree.
    pub degree: usize,
    /// Degree sweep for the lagrangian search.
    pub lagrangian_degree: usize,
    pub lagrangian_bound: usize,
    pub unil_cutoff: usize,
    /// Corrupts one expected value so the suite must fail.
    pub negative_control: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            degree: 4,
            lagrangian_degree: 2,
            lagrangian_bound: 3,
            unil_cutoff: 3,
            negative_control: false,
        }
    }
}

/// Integer polynomials with {0, 1} coefficients of degree at most `d`,
/// including zero.
pub fn bit_polys(d: usize) -> Vec<ZPoly> {
    F2Poly::all_up_to_degree(d).map(|p| p.lift()).collect()
}

fn collect<I, F>(name: &str, instances: Vec<I>, check: F) -> Result<FixtureResult>
where
    I: Sync,
    F: Fn(&I) -> Result<Option<FixtureFailure>> + Sync,
{
    let outcomes: Vec<Option<FixtureFailure>> = instances
        .par_iter()
        .map(&check)
        .collect::<Result<Vec<_>>>()?;
    let failure = outcomes.into_iter().flatten().next();
    Ok(FixtureResult {
        name: name.to_string(),
        instances: instances.len(),
        passed: failure.is_none(),
        failure,
    })
}

fn fail(instance: String, detail: impl Into<String>) -> Option<FixtureFailure> {
    Some(FixtureFailure {
        instance,
        detail: detail.into(),
        divergence: None,
    })
}

fn ensure(
    ok: bool,
    instance: impl FnOnce() -> String,
    detail: impl FnOnce() -> String,
) -> Option<FixtureFailure> {
    if ok {
        None
    } else {
        fail(instance(), detail())
    }
}

fn diag_ba() -> Matrix<D> {
    Matrix::diagonal(vec![D::b(), D::a()])
}

/// `F(P_{tp,1})`, base change by `diag(b, a)`, `sw`, and compare with
/// `F(P_{p,t})`.
pub fn induced_form_chain(p: &ZPoly) -> ChainScript<Untwisted> {
    let t = ZPoly::t();
    let one = ZPoly::from_i64(1);
    let start = induce_f_form(&GeneratorP::new(&t * p, one).to_form());
    let target = induce_f_form(&GeneratorP::new(p.clone(), t).to_form());
    ChainScript {
        start: ChainValue::Form(start),
        steps: vec![
            ChainStep::BaseChange(diag_ba()),
            ChainStep::Switch,
            ChainStep::AssertEqual(ChainValue::Form(target)),
        ],
    }
}

/// The same chain on the resolution of `N_{tp,g}`, compared with that of
/// `N_{p,tg}`.
pub fn induced_complex_chain(p: &ZPoly, g: &ZPoly) -> Result<ChainScript<Untwisted>> {
    let t = ZPoly::t();
    let start = induce_f_resolution(&QuadResolution::n_complex(&(&t * p), g))?;
    let target = induce_f_resolution(&QuadResolution::n_complex(p, &(&t * g)))?;
    Ok(ChainScript {
        start: ChainValue::Resolution(start),
        steps: vec![
            ChainStep::BaseChange(diag_ba()),
            ChainStep::Switch,
            ChainStep::AssertEqual(ChainValue::Resolution(target)),
        ],
    })
}

fn corrupt(script: &mut ChainScript<Untwisted>) {
    if let Some(ChainStep::AssertEqual(ChainValue::Form(f))) = script.steps.last_mut() {
        let mut theta = f.theta().clone();
        theta.set(0, 1, -theta.get(0, 1).clone());
        *f = crate::quad_forms::QuadraticForm::new(theta, f.epsilon()).expect("square");
    }
}

fn run_chain(instance: String, script: &ChainScript<Untwisted>) -> Result<Option<FixtureFailure>> {
    let report = verify_chain(script)?;
    Ok((!report.passed).then(|| FixtureFailure {
        instance,
        detail: format!(
            "assertion at step {} failed",
            report.failed_step.unwrap_or(0)
        ),
        divergence: report.divergence,
    }))
}

pub fn induced_form_fixture(degree: usize, negative_control: bool) -> Result<FixtureResult> {
    collect("switch-of-induced-form", bit_polys(degree), |p| {
        let mut script = induced_form_chain(p);
        if negative_control && p.is_zero() {
            corrupt(&mut script);
        }
        run_chain(format!("p = {p}"), &script)
    })
}

pub fn induced_complex_fixture(degree: usize) -> Result<FixtureResult> {
    let ps = bit_polys(degree);
    let pairs: Vec<(ZPoly, ZPoly)> = ps
        .iter()
        .flat_map(|p| ps.iter().map(move |g| (p.clone(), g.clone())))
        .collect();
    collect("switch-of-induced-complex", pairs, |(p, g)| {
        run_chain(format!("p = {p}, g = {g}"), &induced_complex_chain(p, g)?)
    })
}

/// The sublagrangian reduction of `(N_{t,p} ⊕ N_{p,t}) - (N_{1,tp} ⊕ N_{tp,1})`
/// is even with trivial Arf invariant.
pub fn relation_fixture(degree: usize) -> Result<FixtureResult> {
    let ps: Vec<F2Poly> = F2Poly::all_up_to_degree(degree).collect();
    collect("relation-sublagrangian", ps, |p| {
        let inst = || format!("p = {p}");
        let (form, s) = relation_form(p)?;
        let perp = orthogonal_complement(&form, &s)?;
        if !perp.contains_submodule(&s) {
            return Ok(fail(
                inst(),
                "S is not contained in its orthogonal complement",
            ));
        }
        let (red, _) = sublagrangian_reduce(&form, &s)?;
        if red.rank() != 4 || !red.is_even() {
            return Ok(fail(
                inst(),
                format!("reduced form is not an even rank 4 form: {red:?}"),
            ));
        }
        let arf = arf_even(&red)?;
        Ok(ensure(arf.is_zero(), inst, || {
            format!("Arf invariant {arf}")
        }))
    })
}

pub fn relation_lagrangian_fixture(degree: usize, bound: usize) -> Result<FixtureResult> {
    let ps: Vec<F2Poly> = F2Poly::all_up_to_degree(degree).collect();
    // the search itself is parallel
    let mut failure = None;
    for p in &ps {
        let (form, s) = relation_form(p)?;
        let (red, _) = sublagrangian_reduce(&form, &s)?;
        let found = find_lagrangian(&red, bound)?;
        let ok = found.is_some_and(|l| {
            orthogonal_complement(&red, &l).is_ok_and(|perp| perp == l)
                && l.basis()
                    .iter()
                    .all(|v| red.q(v).is_ok_and(|q| q.is_zero()))
        });
        if !ok {
            failure = fail(
                format!("p = {p}"),
                format!("no lagrangian with entries of degree <= {bound}"),
            );
            break;
        }
    }
    Ok(FixtureResult {
        name: "relation-lagrangian".into(),
        instances: ps.len(),
        passed: failure.is_none(),
        failure,
    })
}

/// `sw² = id`, additivity, `sw(2e) = 2e`, fixed points `= {π(x) = 0}` and an
/// order two element moved by `sw`, exhaustively.
pub fn switch_laws_fixture(cutoff: usize) -> Result<FixtureResult> {
    let all = enumerate_unil3(cutoff)?.elements;
    let mut result = collect("switch-laws", all.clone(), |e| {
        let inst = || format!("e = {e}");
        let s = e.switch();
        if &s.switch() != e {
            return Ok(fail(inst(), format!("sw(sw(e)) = {}", s.switch())));
        }
        let two = e.times(2);
        if two.switch() != two {
            return Ok(fail(inst(), "sw(2e) != 2e"));
        }
        if (&s == e) != pi_map(e.x()).is_zero() {
            return Ok(fail(inst(), "fixed point set differs from ker(π)"));
        }
        for f in &all {
            if (e + f).switch() != &s + &f.switch() {
                return Ok(fail(
                    format!("e = {e}, f = {f}"),
                    "sw(e + f) != sw(e) + sw(f)",
                ));
            }
        }
        Ok(None)
    })?;
    if result.passed && !all.iter().any(|e| e.order() == 2 && e.switch() != *e) {
        result.passed = false;
        result.failure = fail(
            format!("cutoff {cutoff}"),
            "no order two element moved by sw",
        );
    }
    Ok(result)
}

/// `B ∘ sw = [[1, 0], [1, 1]] ∘ B`, exhaustively.
pub fn switch_on_b_fixture(cutoff: usize) -> Result<FixtureResult> {
    collect("switch-on-b", enumerate_unil3(cutoff)?.elements, |e| {
        let (b1, b2) = e.b_coords();
        let got = e.switch().b_coords();
        let want = (b1.clone(), &b1 + &b2);
        Ok(ensure(
            got == want,
            || format!("e = {e}"),
            || {
                format!(
                    "B(sw e) = ({}, {}), expected ({}, {})",
                    got.0, got.1, want.0, want.1
                )
            },
        ))
    })
}

/// Dictionary values on `[N_{t,1}]`, `[N_{1,t}]` and
/// `[N_{t,p}] + [N_{p,t}] = [N_{1,tp}] + [N_{tp,1}]`.
pub fn dictionary_fixture(degree: usize) -> Result<FixtureResult> {
    let t = ZPoly::t();
    let one = ZPoly::from_i64(1);
    let j1t = UNil3Element::parse("j1[t]")?;
    let anchors = [
        (
            n_class_of_sum(&[(1, t.clone(), one.clone())])?,
            j1t.clone(),
            "N_{t,1} = j1[t]",
        ),
        (
            n_class_of_sum(&[(1, one.clone(), t.clone())])?,
            UNil3Element::parse("j1[t] + j2[t]")?,
            "N_{1,t} = j1[t] + j2[t]",
        ),
        (
            j1t.switch(),
            UNil3Element::parse("j1[t] + j2[t]")?,
            "sw(j1[t]) = N_{1,t}",
        ),
    ];
    for (got, want, what) in anchors {
        if got != want {
            return Ok(FixtureResult {
                name: "dictionary".into(),
                instances: 0,
                passed: false,
                failure: fail(what.to_string(), format!("got {got}, expected {want}")),
            });
        }
    }
    collect("dictionary", bit_polys(degree), |p| {
        let tp = &t * p;
        let diff = n_class_of_sum(&[
            (1, t.clone(), p.clone()),
            (1, p.clone(), t.clone()),
            (-1, one.clone(), tp.clone()),
            (-1, tp, one.clone()),
        ])?;
        Ok(ensure(
            diff.is_zero(),
            || format!("p = {p}"),
            || format!("[N_t,p] + [N_p,t] - [N_1,tp] - [N_tp,1] = {diff}"),
        ))
    })
}

pub fn resolution_fixture(degree: usize) -> Result<FixtureResult> {
    let ps = bit_polys(degree);
    let pairs: Vec<(ZPoly, ZPoly)> = ps
        .iter()
        .flat_map(|p| ps.iter().map(move |g| (p.clone(), g.clone())))
        .collect();
    collect("resolution-dictionary", pairs, |(p, g)| {
        let tp = &ZPoly::t() * p;
        let got = resolution_to_linking(&QuadResolution::n_complex(&tp, g))?;
        let want = make_n(&tp, g)?;
        Ok(ensure(
            got == want,
            || format!("p = {p}, g = {g}"),
            || format!("{got:?} != {want:?}"),
        ))
    })
}

/// Structure set sizes, table counts and Burnside checks.
pub fn classification_fixture(cutoff: usize) -> Result<FixtureResult> {
    let mut checks: Vec<(String, bool)> = Vec::new();
    for (n, want) in [(4, 2), (5, 4), (6, 4), (8, 8)] {
        let got = StructureSet::new(n)?.count(0);
        checks.push((format!("|I_{n}| = {got}, expected {want}"), got == want));
    }
    let t4 = enumerate_j(4, 1, 0)?;
    checks.push((
        format!(
            "J_4 at cutoff 1: {} rows, {} flagged",
            t4.rows.len(),
            t4.flagged()
        ),
        t4.rows.len() == 18 && t4.flagged() == 15,
    ));
    let t6 = enumerate_j(6, 1, 0)?;
    checks.push((
        format!("J_6: {} rows, {} flagged", t6.rows.len(), t6.flagged()),
        t6.rows.len() == 10 && t6.flagged() == 0,
    ));
    for d in 0..=cutoff {
        let u3 = enumerate_unil3(d)?;
        let u2 = enumerate_unil2(d)?;
        checks.push((
            format!(
                "Burnside at cutoff {d}: UNil_3 {}/{}/{}, UNil_2 {}/{}/{}",
                u3.total, u3.fixed, u3.orbits, u2.total, u2.fixed, u2.orbits
            ),
            u3.burnside_holds() && u2.burnside_holds(),
        ));
    }
    let instances = checks.len();
    let failure = checks
        .into_iter()
        .find(|(_, ok)| !ok)
        .and_then(|(what, _)| fail(what, "count mismatch"));
    Ok(FixtureResult {
        name: "classification-counts".into(),
        instances,
        passed: failure.is_none(),
        failure,
    })
}

pub fn run_suite(opts: &VerifyOptions) -> Result<VerifyReport> {
    let d = opts.degree;
    let fixtures = vec![
        induced_form_fixture(d, opts.negative_control)?,
        induced_complex_fixture(d)?,
        resolution_fixture(d.min(3))?,
        relation_fixture(d)?,
        relation_lagrangian_fixture(opts.lagrangian_degree.min(d), opts.lagrangian_bound)?,
        dictionary_fixture(d)?,
        switch_laws_fixture(opts.unil_cutoff)?,
        switch_on_b_fixture(opts.unil_cutoff)?,
        classification_fixture(d)?,
    ];
    Ok(VerifyReport {
        degree: d,
        passed: fixtures.iter().all(|f| f.passed),
        fixtures,
    })
}

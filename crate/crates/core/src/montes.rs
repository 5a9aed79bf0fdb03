//! The branching search from `f mod p` to one complete optimal type per
//! irreducible p-adic factor.
//!
//! Every branch starts from an irreducible factor `ψ_0` of `f mod p`. At each
//! step a representative `φ` of the branch type `T` is built and compared with
//! `f`:
//!
//! * if `T` singles out one factor (`ord_T(f) = 1`) the branch is complete;
//! * if `e_r f_r > 1` (or `T` has order 0) the order-`r+1` polygon of `f`
//!   with respect to `φ` is split into sides and residual factors, each one
//!   extending `T` by a level;
//! * if `e_r f_r = 1` the last level is refined: `φ` replaces `φ_r` and only
//!   the sides steeper than `λ_r` survive.
//!
//! When `φ` divides `f` exactly it is reported as an exact factor.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{phi_expand, resultant::discriminant_core, IntPoly, RatVal, ValuedContext};
use crate::error::{internal, Error, Result};
use crate::ff::ff_factor;
use crate::polygon::{principal_part, Side};
use crate::types::{make_representative, newton_with, r0, residual_on_line, vi_of, OMType};

/// Whether a branch still needs work.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Open,
    Complete,
}

/// One decision taken while growing a branch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    /// `"extend"`, `"refine"` or `"exact"`.
    pub action: &'static str,
    pub level: usize,
    pub slope: String,
    pub psi: String,
}

/// A node of the search.
#[derive(Clone, Debug)]
pub struct Branch {
    pub omtype: OMType,
    pub status: Status,
    /// Representative of a complete branch.
    pub representative: Option<IntPoly>,
    /// The representative divides `f`.
    pub exact: bool,
    pub trace: Vec<Decision>,
    pub refinements: usize,
}

impl Branch {
    pub fn root(omtype: OMType) -> Branch {
        Branch { omtype, status: Status::Open, representative: None, exact: false, trace: Vec::new(), refinements: 0 }
    }

    fn child(&self, omtype: OMType, decision: Decision, refined: bool) -> Branch {
        let mut trace = self.trace.clone();
        trace.push(decision);
        Branch {
            omtype,
            status: Status::Open,
            representative: None,
            exact: false,
            trace,
            refinements: self.refinements + usize::from(refined),
        }
    }

    fn complete(mut self, phi: IntPoly, exact: bool) -> Branch {
        self.status = Status::Complete;
        self.representative = Some(phi);
        self.exact = exact;
        self
    }
}

/// Certificate for one irreducible factor of `f`.
#[derive(Clone, Debug)]
pub struct OkutsuFactor {
    omtype: OMType,
    representative: IntPoly,
    exact: bool,
    trace: Vec<Decision>,
}

impl OkutsuFactor {
    pub fn omtype(&self) -> &OMType {
        &self.omtype
    }

    /// The representative `φ_{r+1}`; equal to the factor when [`Self::is_exact`].
    pub fn representative(&self) -> &IntPoly {
        &self.representative
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn trace(&self) -> &[Decision] {
        &self.trace
    }

    pub fn degree(&self) -> usize {
        self.omtype.m(self.omtype.order() + 1)
    }

    /// Ramification index `e_1⋯e_r`.
    pub fn e(&self) -> i64 {
        self.omtype.e_total()
    }

    /// Residue degree `f_0 f_1⋯f_r`.
    pub fn f(&self) -> i64 {
        self.omtype.f_total()
    }

    /// Levels that belong to the Okutsu frame: all of them when
    /// `e_r f_r > 1`, all but the last otherwise.
    pub fn depth(&self) -> usize {
        match self.omtype.last() {
            None => 0,
            Some(l) if l.e() * l.f() > 1 => self.omtype.order(),
            Some(_) => self.omtype.order() - 1,
        }
    }

    /// `ν_T = Σ h_i/(e_1⋯e_i)` over all levels of the type.
    pub fn nu_t(&self) -> RatVal {
        let mut acc = num_rational::BigRational::from_integer(0.into());
        let mut e = 1i64;
        for l in self.omtype.levels() {
            e *= l.e();
            acc += num_rational::BigRational::new(l.h().into(), e.into());
        }
        RatVal::Finite(acc)
    }
}

/// Bound on the number of refinements along any branch.
pub fn refinement_bound(f: &IntPoly, ctx: &ValuedContext) -> Result<usize> {
    let disc = discriminant_core(f)?;
    let v = ctx.val(&disc).ok_or(Error::Inseparable)?;
    Ok(f.degree().unwrap_or(0) * (v as usize + 1) + 1)
}

/// Checks the preconditions shared by every entry point.
pub fn check_input(f: &IntPoly) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if f.degree() == Some(0) {
        return Err(Error::ConstantPolynomial);
    }
    if discriminant_core(f)?.sign() == num_bigint::Sign::NoSign {
        return Err(Error::Inseparable);
    }
    Ok(())
}

fn slope_text(h: i64, e: i64) -> String {
    format!("-{h}/{e}")
}

/// Advances an open branch by one step.
pub fn branch_step(b: Branch, f: &IntPoly, seed: u64, bound: usize) -> Result<Vec<Branch>> {
    if b.status == Status::Complete {
        return Ok(vec![b]);
    }
    let t = b.omtype.clone();
    let r = t.order();
    let phi = make_representative(&t, seed)?;
    let omega = t.ord(f)?;
    let expansion = phi_expand(f, &phi)?;
    let divides_exactly = expansion.digit(0).is_zero();
    if omega == 0 {
        return Err(internal!("branch type {} does not divide f", t.describe()));
    }
    if omega == 1 {
        return Ok(vec![b.complete(phi, divides_exactly)]);
    }
    let refine = matches!(t.last(), Some(l) if l.e() * l.f() == 1);
    let (level, sides) = if refine {
        let l = t.last().unwrap();
        let poly = newton_with(f, &t, r, &phi)?;
        let sides: Vec<Side> = principal_part(&poly).into_iter().filter(|s| s.h * l.e() > l.h() * s.e).collect();
        (r, sides)
    } else {
        (r + 1, principal_part(&newton_with(f, &t, r + 1, &phi)?))
    };
    let width: usize = sides.iter().map(Side::width).sum();
    if width + usize::from(divides_exactly) != omega {
        return Err(internal!("polygon of {} has width {width} but the type divides f {omega} times", t.describe()));
    }
    let big_v = vi_of(&phi, &t, level)?;
    let k = t.field(level).clone();
    let mut out = Vec::new();
    if divides_exactly {
        let d = Decision { action: "exact", level, slope: "-inf".into(), psi: String::new() };
        out.push(b.child(t.clone(), d, false).complete(phi.clone(), true));
    }
    for side in &sides {
        let res = residual_on_line(&t, level, &phi, big_v, f, side.h, side.e)?;
        if res.s0 != side.start.x || res.s1 != side.end.x {
            return Err(internal!("residual contact range disagrees with the side"));
        }
        for (psi, _) in ff_factor(&k, &res.poly, seed)? {
            let d = Decision {
                action: if refine { "refine" } else { "extend" },
                level,
                slope: slope_text(side.h, side.e),
                psi: k.fmt_poly(&psi, "y"),
            };
            let child =
                if refine { t.refine(&phi, side.h, side.e, &psi)? } else { t.extend(&phi, side.h, side.e, &psi)? };
            let child = b.child(child, d, refine);
            if child.refinements > bound {
                return Err(internal!("refinement bound {bound} exceeded"));
            }
            out.push(child);
        }
    }
    Ok(out)
}

/// Runs the search on a monic separable `f` and returns one certificate per
/// irreducible factor, in canonical order: by `ψ_0`, then by side (steepest
/// first) and residual factor at every level.
///
/// ```
/// use okutsu::arith::{IntPoly, ValuedContext};
/// use okutsu::montes::montes;
///
/// let ctx = ValuedContext::new(3u32, 20).unwrap();
/// let fs = montes(&IntPoly::from_i64(&[27, 0, 12, 0, 1]), &ctx, 0).unwrap();
/// let ef: Vec<(i64, i64)> = fs.iter().map(|x| (x.e(), x.f())).collect();
/// assert_eq!(ef, vec![(1, 2), (2, 1)]);
/// ```
pub fn montes(f: &IntPoly, ctx: &ValuedContext, seed: u64) -> Result<Vec<OkutsuFactor>> {
    check_input(f)?;
    let bound = refinement_bound(f, ctx)?;
    let fp = crate::ff::TowerField::prime(ctx.p_u64());
    let mut branches = Vec::new();
    for (psi0, _) in ff_factor(&fp, &r0(f, ctx)?, seed)? {
        branches.push(Branch::root(OMType::order0(ctx, psi0)?));
    }
    while branches.iter().any(|b| b.status == Status::Open) {
        let next: Vec<Result<Vec<Branch>>> = branches.into_par_iter().map(|b| branch_step(b, f, seed, bound)).collect();
        branches = Vec::new();
        for step in next {
            branches.extend(step?);
        }
    }
    let factors: Vec<OkutsuFactor> = branches
        .into_iter()
        .map(|b| OkutsuFactor {
            representative: b.representative.expect("complete branches carry a representative"),
            omtype: b.omtype,
            exact: b.exact,
            trace: b.trace,
        })
        .collect();
    let total: usize = factors.iter().map(OkutsuFactor::degree).sum();
    if Some(total) != f.degree() {
        return Err(internal!("factor degrees sum to {total}, not {}", f.degree().unwrap()));
    }
    Ok(factors)
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The outcome of [`certify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub(crate) fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

fn divides_by(g: &IntPoly, d: &IntPoly) -> bool {
    matches!(crate::arith::expansion::div_exact(g, d), Ok(Some(_)))
}

/// Checks a factor list against `f`: degrees add up, each type singles out
/// one factor, and no type divides another factor's approximation.
pub fn certify(factors: &[OkutsuFactor], f: &IntPoly, ctx: &ValuedContext) -> Report {
    let mut report = Report { checks: Vec::new() };
    let total: usize = factors.iter().map(OkutsuFactor::degree).sum();
    let deg = f.degree().unwrap_or(0);
    report.push("degree_sum", total == deg && !factors.is_empty(), format!("{total} of {deg}"));
    for (i, fac) in factors.iter().enumerate() {
        let t = fac.omtype();
        let (ok, detail) = if fac.is_exact() {
            (divides_by(f, fac.representative()), "representative divides f".to_string())
        } else {
            match t.is_complete(f) {
                Ok(ok) => (ok, format!("ord of {} in f", t.describe())),
                Err(e) => (false, e.to_string()),
            }
        };
        report.push(format!("complete[{i}]"), ok && t.ctx() == ctx, detail);
    }
    for (i, a) in factors.iter().enumerate() {
        for (j, b) in factors.iter().enumerate() {
            if i == j {
                continue;
            }
            let divides = if b.is_exact() {
                divides_by(a.representative(), b.representative())
            } else {
                b.omtype().divides(a.representative()).unwrap_or(true)
            };
            report.push(format!("separated[{j}->{i}]"), !divides, "");
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn run(c: &[i64], p: u64) -> Vec<OkutsuFactor> {
        montes(&ip(c), &ValuedContext::new(p, 20).unwrap(), 0).unwrap()
    }

    #[test]
    fn inert_quadratic() {
        let fs = run(&[9, 0, 1], 3);
        assert_eq!(fs.len(), 1);
        let f = &fs[0];
        assert_eq!((f.degree(), f.depth(), f.e(), f.f()), (2, 1, 1, 2));
        assert!(f.is_exact());
        assert_eq!(f.representative(), &ip(&[9, 0, 1]));
        assert_eq!(f.nu_t(), RatVal::from_int(1));
    }

    #[test]
    fn split_quadratic() {
        let fs = run(&[25, 0, 1], 5);
        assert_eq!(fs.len(), 2);
        let reps: Vec<_> = fs.iter().map(|f| f.representative().clone()).collect();
        assert_eq!(reps, vec![ip(&[10, 1]), ip(&[-10, 1])]);
        for f in &fs {
            assert_eq!((f.degree(), f.depth(), f.e(), f.f()), (1, 0, 1, 1));
            assert!(!f.is_exact());
        }
    }

    #[test]
    fn two_sided_polygon() {
        let fs = run(&[27, 0, 12, 0, 1], 3);
        let shape: Vec<_> = fs.iter().map(|f| (f.degree(), f.e(), f.f(), f.is_exact())).collect();
        assert_eq!(shape, vec![(2, 1, 2, true), (2, 2, 1, true)]);
        assert_eq!(fs[1].representative(), &ip(&[3, 0, 1]));
    }

    #[test]
    fn exact_linear_factor_of_a_repeated_residue() {
        // x(x - 5) over p = 5: x divides f exactly.
        let fs = run(&[0, -5, 1], 5);
        assert_eq!(fs.len(), 2);
        assert!(fs[0].is_exact());
        assert_eq!(fs[0].representative(), &IntPoly::x());
        assert_eq!(fs[1].degree(), 1);
    }

    #[test]
    fn refinement_path() {
        // (x - 31)(x - 56) over p = 5: x - 1 and then x - 6 share both roots.
        let f = &ip(&[-31, 1]) * &ip(&[-56, 1]);
        let fs = montes(&f, &ValuedContext::new(5, 20).unwrap(), 0).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|f| f.degree() == 1 && f.depth() == 0));
        assert!(fs.iter().any(|f| f.trace().iter().any(|d| d.action == "refine")));
        assert!(certify(&fs, &f, &ValuedContext::new(5, 20).unwrap()).passed());
    }

    #[test]
    fn preconditions() {
        let c = ValuedContext::new(3, 20).unwrap();
        assert_eq!(montes(&ip(&[1, 2]), &c, 0).unwrap_err(), Error::NotMonic);
        assert_eq!(montes(&ip(&[1]), &c, 0).unwrap_err(), Error::ConstantPolynomial);
        assert_eq!(montes(&ip(&[1, 2, 1]), &c, 0).unwrap_err(), Error::Inseparable);
    }

    #[test]
    fn certify_flags_doctored_lists() {
        let c = ValuedContext::new(3, 20).unwrap();
        let f = ip(&[9, 0, 1]);
        let fs = montes(&f, &c, 0).unwrap();
        assert!(certify(&fs, &f, &c).passed());
        let doubled = vec![fs[0].clone(), fs[0].clone()];
        let report = certify(&doubled, &f, &c);
        assert!(!report.checks.iter().find(|c| c.name == "degree_sum").unwrap().passed);
        assert!(!certify(&[], &f, &c).passed());
    }
}

//! Requests and JSON responses shared by the command-line front end and the
//! tests.
//!
//! Every number in a response is a decimal string, and every rational is a
//! `{"num", "den"}` pair (or the string `"inf"`), so that no value passes
//! through a floating-point JSON number.

mod parse;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{IntPoly, RatVal, ValuedContext};
use crate::error::{Error, Result};
use crate::factor_loop::{factor_to_precision, FactorResult};
use crate::invariants::{frame_of, nu_and_precision};
use crate::montes::{certify, montes, OkutsuFactor, Report};
use crate::oracle::{check_product_congruence, v_theta};
use crate::polygon::{principal_part, NewtonPolygon};
use crate::types::{make_representative, newton_i, newton_with};

pub use parse::parse_poly;

pub const SCHEMA_VERSION: &str = "1.0";

/// Seed used when none is given: canonical lifts, no perturbation.
pub const DEFAULT_SEED: u64 = 0;

/// Precision used by `factor` when none is given.
pub const DEFAULT_PRECISION: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Factor,
    Invariants,
    Frame,
    Polygon,
}

/// A validated command-line request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub command: Command,
    pub poly: String,
    pub prime: String,
    pub precision: Option<u32>,
    pub order: Option<usize>,
    pub verify: bool,
    pub seed: u64,
}

impl Request {
    pub fn new(command: Command, prime: impl Into<String>, poly: impl Into<String>) -> Request {
        Request {
            command,
            poly: poly.into(),
            prime: prime.into(),
            precision: None,
            order: None,
            verify: false,
            seed: DEFAULT_SEED,
        }
    }
}

/// An exact rational or `"inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rational {
    Finite { num: String, den: String },
    Infinite(String),
}

impl From<&RatVal> for Rational {
    fn from(v: &RatVal) -> Self {
        match v {
            RatVal::Finite(q) => Rational::Finite { num: q.numer().to_string(), den: q.denom().to_string() },
            RatVal::Infinity => Rational::Infinite("inf".into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub poly: String,
    pub parsed: String,
    pub prime: String,
    pub precision: Option<String>,
    pub order: Option<String>,
    pub seed: String,
    pub verify: bool,
}

/// Quantities that do not depend on the choices made by the run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Canonical {
    pub degree: String,
    pub depth: String,
    pub e: String,
    pub f: String,
    /// Degrees `m_1, …, m_r` of the frame polynomials.
    pub m: Vec<String>,
    /// Frame-level slopes `-h_i/e_i`.
    pub slopes: Vec<String>,
    /// `v(F_i(θ))`.
    pub v_frame: Vec<Rational>,
}

/// One level of the type as built by this run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub phi: String,
    pub slope: String,
    pub psi: String,
}

/// Polynomials and type data that may change with the seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonCanonical {
    pub frame: Vec<String>,
    pub psi0: String,
    pub levels: Vec<LevelRecord>,
    pub approximation: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Precision {
    pub nu_t: Rational,
    pub nu: Rational,
    pub requested: Option<String>,
    pub iterations: Option<String>,
    pub h_sequence: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub canonical: Canonical,
    pub non_canonical: NonCanonical,
    pub precision: Option<Precision>,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideRecord {
    pub slope: String,
    pub h: String,
    pub e: String,
    pub length: String,
    pub width: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonRecord {
    /// Index of the factor whose type supplies the level data.
    pub factor: String,
    pub order: String,
    pub phi: String,
    pub vertices: Vec<(String, Rational)>,
    pub principal: Vec<SideRecord>,
    pub dump: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    pub position: Option<String>,
}

/// The JSON document written to standard output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Response {
    pub schema_version: String,
    pub command: Option<Command>,
    pub input: Option<InputEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FactorRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polygons: Option<Vec<PolygonRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not_prime",
        Error::PrimeTooLarge(_) => "prime_too_large",
        Error::BadPrecision => "bad_precision",
        Error::NotMonic => "not_monic",
        Error::ConstantPolynomial => "constant_polynomial",
        Error::Inseparable => "inseparable",
        Error::ZeroPolynomial => "zero_polynomial",
        Error::Reducible(_) => "reducible",
        Error::NoFinitePoint => "no_finite_point",
        Error::OutOfRange(_) => "out_of_range",
        Error::Parse { .. } => "parse",
        Error::InvalidType(_) => "invalid_type",
        Error::Internal(_) => "internal",
    }
}

/// Exit status for an error: 2 for bad input, 1 for a broken invariant.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_precondition() {
        2
    } else {
        1
    }
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn canonical(fac: &OkutsuFactor) -> Canonical {
    let frame = frame_of(fac);
    Canonical {
        degree: s(fac.degree()),
        depth: s(frame.depth()),
        e: s(fac.e()),
        f: s(fac.f()),
        m: frame.degrees.iter().map(s).collect(),
        slopes: frame.levels.iter().map(|l| format!("-{}/{}", l.h, l.e)).collect(),
        v_frame: frame.v_f.iter().map(Rational::from).collect(),
    }
}

fn non_canonical(fac: &OkutsuFactor, approximation: &IntPoly) -> NonCanonical {
    let t = fac.omtype();
    NonCanonical {
        frame: frame_of(fac).polynomials.iter().map(s).collect(),
        psi0: t.field(0).fmt_poly(t.psi0(), "y"),
        levels: t
            .levels()
            .iter()
            .enumerate()
            .map(|(i, l)| LevelRecord {
                phi: s(l.phi()),
                slope: format!("-{}/{}", l.h(), l.e()),
                psi: t.field(i + 1).fmt_poly(l.psi(), "y"),
            })
            .collect(),
        approximation: s(approximation),
    }
}

fn from_result(r: &FactorResult) -> FactorRecord {
    FactorRecord {
        canonical: canonical(&r.factor),
        non_canonical: non_canonical(&r.factor, &r.approximation),
        precision: Some(Precision {
            nu_t: Rational::from(&r.nu_t),
            nu: Rational::from(&r.nu),
            requested: Some(s(r.requested_n)),
            iterations: Some(s(r.iterations())),
            h_sequence: Some(r.h_sequence.iter().map(s).collect()),
        }),
        exact: r.is_exact(),
    }
}

fn from_factor(fac: &OkutsuFactor, f: &IntPoly, with_precision: bool) -> Result<FactorRecord> {
    let precision = if with_precision {
        let (nu_t, nu) = nu_and_precision(fac, f)?;
        Some(Precision {
            nu_t: Rational::from(&nu_t),
            nu: Rational::from(&nu),
            requested: None,
            iterations: None,
            h_sequence: None,
        })
    } else {
        None
    };
    Ok(FactorRecord {
        canonical: canonical(fac),
        non_canonical: non_canonical(fac, fac.representative()),
        precision,
        exact: fac.is_exact(),
    })
}

fn polygon_record(index: usize, order: usize, phi: &IntPoly, poly: &NewtonPolygon) -> PolygonRecord {
    PolygonRecord {
        factor: s(index),
        order: s(order),
        phi: s(phi),
        vertices: poly.vertices().iter().map(|v| (s(v.x), Rational::from(&RatVal::Finite(v.y.clone())))).collect(),
        principal: principal_part(poly)
            .iter()
            .map(|side| SideRecord {
                slope: format!("-{}/{}", side.h, side.e),
                h: s(side.h),
                e: s(side.e),
                length: s(side.d),
                width: s(side.width()),
            })
            .collect(),
        dump: poly.dump(),
    }
}

/// Oracle-side checks on factors whose approximations are known to be
/// irreducible: `v(F_i(θ))` from the closed formula against the resultant.
fn oracle_checks(report: &mut Report, factors: &[(&OkutsuFactor, &IntPoly)], ctx: &ValuedContext) {
    for (i, (fac, approx)) in factors.iter().enumerate() {
        let frame = frame_of(fac);
        for (j, (fi, expected)) in frame.polynomials.iter().zip(&frame.v_f).enumerate() {
            let got = v_theta(fi, approx, ctx);
            let ok = got.as_ref() == Ok(expected);
            let detail = match got {
                Ok(v) => format!("resultant gives {v}, closed formula {expected}"),
                Err(e) => e.to_string(),
            };
            report.push(format!("v_frame[{i}][{}]", j + 1), ok, detail);
        }
    }
}

fn verification(report: Report) -> Verification {
    Verification {
        passed: report.passed(),
        checks: report
            .checks
            .into_iter()
            .map(|c| CheckRecord { name: c.name, passed: c.passed, detail: c.detail })
            .collect(),
    }
}

fn execute(req: &Request) -> Result<Response> {
    let p: BigInt = req.prime.trim().parse().map_err(|_| Error::NotPrime(req.prime.clone()))?;
    let n = req.precision.unwrap_or(DEFAULT_PRECISION);
    let ctx = ValuedContext::new(p, n)?;
    let f = parse_poly(&req.poly)?;
    let echo = InputEcho {
        poly: req.poly.clone(),
        parsed: s(&f),
        prime: s(ctx.p()),
        precision: (req.command == Command::Factor).then(|| s(n)),
        order: (req.command == Command::Polygon).then(|| s(req.order.unwrap_or(1))),
        seed: s(req.seed),
        verify: req.verify,
    };
    let mut response = Response {
        schema_version: SCHEMA_VERSION.into(),
        command: Some(req.command),
        input: Some(echo),
        factors: None,
        polygons: None,
        verification: None,
        error: None,
    };
    match req.command {
        Command::Factor => {
            let results = factor_to_precision(&f, &ctx, n, req.seed)?;
            if req.verify {
                let factors: Vec<OkutsuFactor> = results.iter().map(|r| r.factor.clone()).collect();
                let mut report = certify(&factors, &f, &ctx);
                let parts: Vec<IntPoly> = results.iter().map(|r| r.approximation.clone()).collect();
                report.push(
                    "product_congruence",
                    check_product_congruence(&f, &parts, &ctx, n),
                    format!("f ≡ product of approximations mod p^{n}"),
                );
                let pairs: Vec<_> = results.iter().map(|r| (&r.factor, &r.approximation)).collect();
                oracle_checks(&mut report, &pairs, &ctx);
                response.verification = Some(verification(report));
            }
            response.factors = Some(results.iter().map(from_result).collect());
        }
        Command::Invariants | Command::Frame => {
            let factors = montes(&f, &ctx, req.seed)?;
            if req.verify {
                let mut report = certify(&factors, &f, &ctx);
                let pairs: Vec<_> = factors.iter().map(|fac| (fac, fac.representative())).collect();
                oracle_checks(&mut report, &pairs, &ctx);
                response.verification = Some(verification(report));
            }
            let with_precision = req.command == Command::Invariants;
            response.factors =
                Some(factors.iter().map(|fac| from_factor(fac, &f, with_precision)).collect::<Result<_>>()?);
        }
        Command::Polygon => {
            let order = req.order.unwrap_or(1);
            if order == 0 {
                return Err(Error::OutOfRange("polygon order must be at least 1".into()));
            }
            let factors = montes(&f, &ctx, req.seed)?;
            let mut seen: Vec<(IntPoly, usize)> = Vec::new();
            let mut polygons = Vec::new();
            for (i, fac) in factors.iter().enumerate() {
                let t = fac.omtype();
                let (phi, poly) = if order <= t.order() {
                    (t.level(order).phi().clone(), newton_i(&f, t, order)?)
                } else if order == t.order() + 1 {
                    let phi = make_representative(t, req.seed)?;
                    let poly = newton_with(&f, t, order, &phi)?;
                    (phi, poly)
                } else {
                    continue;
                };
                let key = (phi.clone(), order);
                if seen.contains(&key) {
                    continue;
                }
                seen.push(key);
                polygons.push(polygon_record(i, order, &phi, &poly));
            }
            if req.verify {
                response.verification = Some(verification(certify(&factors, &f, &ctx)));
            }
            response.polygons = Some(polygons);
        }
    }
    Ok(response)
}

/// Runs a request and returns the response with its exit status: 0 on
/// success, 2 when the input violates a precondition and 1 when an internal
/// check fails. Failed `--verify` checks do not change the status.
pub fn run(req: &Request) -> (Response, i32) {
    match execute(req) {
        Ok(resp) => (resp, 0),
        Err(e) => {
            let position = match &e {
                Error::Parse { pos, .. } => Some(s(pos)),
                _ => None,
            };
            let resp = Response {
                schema_version: SCHEMA_VERSION.into(),
                command: Some(req.command),
                input: None,
                factors: None,
                polygons: None,
                verification: None,
                error: Some(ErrorRecord { kind: error_kind(&e).into(), message: e.to_string(), position }),
            };
            (resp, exit_code(&e))
        }
    }
}

/// [`run`] with the response rendered as pretty-printed JSON.
pub fn run_json(req: &Request) -> (String, i32) {
    let (resp, code) = run(req);
    (serde_json::to_string_pretty(&resp).expect("responses always serialize"), code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inert_invariants() {
        let (resp, code) = run(&Request::new(Command::Invariants, "3", "x^2+9"));
        assert_eq!(code, 0);
        let fs = resp.factors.unwrap();
        assert_eq!(fs.len(), 1);
        let c = &fs[0].canonical;
        assert_eq!((c.degree.as_str(), c.depth.as_str(), c.e.as_str(), c.f.as_str()), ("2", "1", "1", "2"));
        assert_eq!(c.v_frame, vec![Rational::Finite { num: "1".into(), den: "1".into() }]);
        assert!(fs[0].exact);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&Request::new(Command::Factor, "4", "x^2+9")).1, 2);
        assert_eq!(run(&Request::new(Command::Factor, "3", "2x^2+9")).1, 2);
        assert_eq!(run(&Request::new(Command::Factor, "3", "x^2+2x+1")).1, 2);
        let (resp, code) = run(&Request::new(Command::Factor, "3", "x^2+"));
        assert_eq!(code, 2);
        assert_eq!(resp.error.unwrap().kind, "parse");
        assert_eq!(exit_code(&Error::Internal("x".into())), 1);
    }

    #[test]
    fn round_trip() {
        let mut req = Request::new(Command::Factor, "3", "x^4+12x^2+27");
        req.precision = Some(4);
        req.verify = true;
        let (json, code) = run_json(&req);
        assert_eq!(code, 0);
        let back: Response = serde_json::from_str(&json).unwrap();
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
        assert!(back.verification.unwrap().passed);
    }
}

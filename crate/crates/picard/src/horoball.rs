//! Horospherical coordinates on D, the group action, and Siegel-strip
//! reduction.
//!
//! D is modeled as the lines in C^3 on which the form Q is positive (the
//! minority sign of C's spectrum {+1, -1, -1}). A point z = (y, beta, r)
//! with y > 0 corresponds projectively to
//! `v(z) = (i y^2 + r + i |beta|^2 / 2, i conj(beta), 1)`,
//! the image of the base vector v0 = (i, 0, 1) under u(beta, r) a(y).
//!
//! The Siegel strip S = { -1/2 < r <= 1/2, beta in the square with vertices
//! 0, (1+i)/2, i, (-1+i)/2 } is an exact fundamental set for Gamma_{P0} once
//! a boundary convention is fixed; see `in_siegel_strip`.

use std::fmt;

use num_complex::Complex64;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hermitian::{cmat_mul_vec, CMat, GMatrix, GeneratorName, generator};

/// A point of D in horospherical coordinates; y > 0 strictly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HoroPoint {
    pub y: f64,
    pub beta: Complex64,
    pub r: f64,
}

/// A point of D as a projective positive-norm vector.
#[derive(Clone, Copy, Debug)]
pub struct ProjPoint {
    pub v: [Complex64; 3],
}

/// Langlands data of an element of P0 = N0 A0 M0: it acts on D by
/// (y0, beta0, r0) |-> (y y0, y zeta^3 beta0 + beta, y^2 r0 + r - y Im(beta conj(beta0) zeta^-3)).
#[derive(Clone, Copy, Debug)]
pub struct ParabolicParams {
    pub y: f64,
    pub zeta: Complex64,
    pub beta: Complex64,
    pub r: f64,
}

/// A word over the Gamma_{P0} generators, stored in left-to-right product
/// order: evaluate() multiplies the tokens in sequence, and applying the
/// product via `act` performs the reduction steps last-step-first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SiegelWord {
    pub tokens: Vec<SiegelToken>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiegelToken {
    Tau,
    TauInv,
    Sigma,
    SigmaInv,
    SigmaCheck,
    SigmaCheckInv,
    Eps,
    EpsInv,
}

impl SiegelToken {
    pub fn as_str(&self) -> &'static str {
        match self {
            SiegelToken::Tau => "tau",
            SiegelToken::TauInv => "tau~",
            SiegelToken::Sigma => "sigma",
            SiegelToken::SigmaInv => "sigma~",
            SiegelToken::SigmaCheck => "sigmacheck",
            SiegelToken::SigmaCheckInv => "sigmacheck~",
            SiegelToken::Eps => "eps",
            SiegelToken::EpsInv => "eps~",
        }
    }

    pub fn parse(s: &str) -> Result<SiegelToken> {
        match s {
            "tau" => Ok(SiegelToken::Tau),
            "tau~" => Ok(SiegelToken::TauInv),
            "sigma" => Ok(SiegelToken::Sigma),
            "sigma~" => Ok(SiegelToken::SigmaInv),
            "sigmacheck" => Ok(SiegelToken::SigmaCheck),
            "sigmacheck~" => Ok(SiegelToken::SigmaCheckInv),
            "eps" => Ok(SiegelToken::Eps),
            "eps~" => Ok(SiegelToken::EpsInv),
            _ => Err(Error::parse(s, 0, "unknown Siegel word token")),
        }
    }

    fn matrix(&self) -> GMatrix {
        let m = |n: GeneratorName| generator(n);
        match self {
            SiegelToken::Tau => m(GeneratorName::Tau),
            SiegelToken::TauInv => m(GeneratorName::Tau).adjugate(),
            SiegelToken::Sigma => m(GeneratorName::Sigma),
            SiegelToken::SigmaInv => m(GeneratorName::Sigma).adjugate(),
            SiegelToken::SigmaCheck => m(GeneratorName::SigmaCheck),
            SiegelToken::SigmaCheckInv => m(GeneratorName::SigmaCheck).adjugate(),
            SiegelToken::Eps => m(GeneratorName::Epsilon),
            SiegelToken::EpsInv => m(GeneratorName::Epsilon).adjugate(),
        }
    }
}

impl SiegelWord {
    pub fn empty() -> Self {
        SiegelWord { tokens: Vec::new() }
    }

    /// Product of the tokens, left to right; an element of Gamma_{P0}.
    pub fn evaluate(&self) -> GMatrix {
        let mut acc = GMatrix::identity();
        for t in &self.tokens {
            acc = &acc * &t.matrix();
        }
        acc
    }

    pub fn parse(s: &str) -> Result<SiegelWord> {
        let mut tokens = Vec::new();
        for part in s.split_whitespace() {
            tokens.push(SiegelToken::parse(part)?);
        }
        Ok(SiegelWord { tokens })
    }
}

impl fmt::Display for SiegelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.tokens {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", t.as_str())?;
            first = false;
        }
        Ok(())
    }
}

impl HoroPoint {
    pub fn new(y: f64, beta: Complex64, r: f64) -> Self {
        HoroPoint { y, beta, r }
    }

    /// Parses "y,beta,r" where beta uses the a+bi text form with real
    /// coefficients (e.g. "2,0,0", "1,i,0.5", "0.9,0.2+0.1i,0"), or a JSON
    /// object {"y": f, "beta": [re, im], "r": f}.
    pub fn parse(s: &str) -> Result<HoroPoint> {
        let t = s.trim();
        if t.starts_with('{') {
            let v: serde_json::Value = serde_json::from_str(t)
                .map_err(|e| Error::parse(t, 0, format!("bad point JSON: {e}")))?;
            let y = v["y"]
                .as_f64()
                .ok_or_else(|| Error::parse(t, 0, "missing numeric field y"))?;
            let r = v["r"]
                .as_f64()
                .ok_or_else(|| Error::parse(t, 0, "missing numeric field r"))?;
            let b = v["beta"]
                .as_array()
                .ok_or_else(|| Error::parse(t, 0, "beta must be [re, im]"))?;
            if b.len() != 2 {
                return Err(Error::parse(t, 0, "beta must be [re, im]"));
            }
            let re = b[0]
                .as_f64()
                .ok_or_else(|| Error::parse(t, 0, "beta entries must be numbers"))?;
            let im = b[1]
                .as_f64()
                .ok_or_else(|| Error::parse(t, 0, "beta entries must be numbers"))?;
            let p = HoroPoint::new(y, Complex64::new(re, im), r);
            p.validate()?;
            return Ok(p);
        }
        let parts: Vec<&str> = t.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::parse(s, 0, "expected y,beta,r"));
        }
        let y: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::parse(parts[0], 0, "bad y coordinate"))?;
        let beta = parse_complex(parts[1].trim())?;
        let r: f64 = parts[2]
            .trim()
            .parse()
            .map_err(|_| Error::parse(parts[2], 0, "bad r coordinate"))?;
        let p = HoroPoint::new(y, beta, r);
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !self.y.is_finite() || self.y <= 0.0 {
            return Err(Error::Invalid(format!("y must be positive, got {}", self.y)));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "y": crate::round12(self.y),
            "beta": [crate::round12(self.beta.re), crate::round12(self.beta.im)],
            "r": crate::round12(self.r),
        })
    }

    /// Max coordinate distance, treating beta as two reals.
    pub fn dist(&self, other: &HoroPoint) -> f64 {
        (self.y - other.y)
            .abs()
            .max((self.beta - other.beta).norm())
            .max((self.r - other.r).abs())
    }
}

/// Parses a complex coordinate "a", "bi", "a+bi", "a-bi" with real (float)
/// coefficients, accepting "i" and "-i" for the unit.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::parse(s, 0, "empty complex number"));
    }
    // split into one or two signed terms
    let bytes = t.as_bytes();
    let mut split = None;
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    let (first, second) = match split {
        Some(idx) => (&t[..idx], Some(&t[idx..])),
        None => (t, None),
    };
    let parse_term = |term: &str| -> Result<(f64, bool)> {
        let tt = term.trim();
        if let Some(head) = tt.strip_suffix('i') {
            let coeff = match head {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => head
                    .parse()
                    .map_err(|_| Error::parse(term, 0, "bad imaginary coefficient"))?,
            };
            Ok((coeff, true))
        } else {
            Ok((
                tt.parse()
                    .map_err(|_| Error::parse(term, 0, "bad real coefficient"))?,
                false,
            ))
        }
    };
    let (a, a_imag) = parse_term(first)?;
    match second {
        None => Ok(if a_imag {
            Complex64::new(0.0, a)
        } else {
            Complex64::new(a, 0.0)
        }),
        Some(sec) => {
            let (b, b_imag) = parse_term(sec)?;
            if a_imag || !b_imag {
                return Err(Error::parse(s, 0, "expected re then im term"));
            }
            Ok(Complex64::new(a, b))
        }
    }
}

/// The K-fixed base vector v0 = (i, 0, 1); Q(v0, v0) = 2 > 0, verifying that
/// +1 is the minority eigenvalue of C and that D is the positive-sign locus.
pub fn base_vector() -> ProjPoint {
    ProjPoint {
        v: [
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ],
    }
}

/// v(z) = u(beta, r) a(y) v0, expanded symbolically and scaled to v3 = 1.
pub fn horo_to_vector(z: &HoroPoint) -> ProjPoint {
    let i = Complex64::new(0.0, 1.0);
    let v1 = i * z.y * z.y + z.r + i * z.beta.norm_sqr() / 2.0;
    let v2 = i * z.beta.conj();
    ProjPoint {
        v: [v1, v2, Complex64::new(1.0, 0.0)],
    }
}

/// Inverse of `horo_to_vector`. Errors when v3 = 0 (cusp direction of P0) or
/// when the recovered y^2 is not positive (not interior to D).
pub fn vector_to_horo(v: &[Complex64; 3]) -> Result<HoroPoint> {
    let scale = v[2].norm();
    let mag = v[0].norm().max(v[1].norm()).max(scale);
    if scale <= 1e-14 * mag.max(1.0) {
        return Err(Error::CuspDirection);
    }
    let t1 = v[0] / v[2];
    let t2 = v[1] / v[2];
    let beta = (-Complex64::new(0.0, 1.0) * t2).conj();
    let r = t1.re;
    let y2 = t1.im - beta.norm_sqr() / 2.0;
    if y2 <= 0.0 {
        return Err(Error::NotInterior("recovered y^2 <= 0"));
    }
    Ok(HoroPoint::new(y2.sqrt(), beta, r))
}

/// Left action of g on D through the vector model.
pub fn act(g: &GMatrix, z: &HoroPoint) -> Result<HoroPoint> {
    let v = horo_to_vector(z);
    let w = g.mul_cvec(&v.v);
    vector_to_horo(&w)
}

/// Same action for a complex matrix (used by the eigenline machinery).
pub fn act_c(m: &CMat, z: &HoroPoint) -> Result<HoroPoint> {
    let v = horo_to_vector(z);
    let w = cmat_mul_vec(m, &v.v);
    vector_to_horo(&w)
}

/// The closed-form P0-action
/// (y y0, y zeta^3 beta0 + beta, y^2 r0 + r - y Im(beta conj(beta0) zeta^-3)).
pub fn act_parabolic(p: &ParabolicParams, z: &HoroPoint) -> HoroPoint {
    let zeta3 = p.zeta * p.zeta * p.zeta;
    let y = p.y * z.y;
    let beta = p.y * zeta3 * z.beta + p.beta;
    let r = p.y * p.y * z.r + p.r - p.y * (p.beta * z.beta.conj() * zeta3.conj()).im;
    HoroPoint::new(y, beta, r)
}

/// The fixed-point conditions of u(beta, r) m(zeta) acting on y = 1 points:
/// beta = beta0 (1 - zeta^3), r = |beta0|^2 Im(zeta^-3).
pub fn fixed_point_conditions(zeta: Complex64, beta0: Complex64) -> (Complex64, f64) {
    let zeta3 = zeta * zeta * zeta;
    let beta = beta0 * (Complex64::new(1.0, 0.0) - zeta3);
    let r = beta0.norm_sqr() * zeta3.conj().im;
    (beta, r)
}

/// The candidate stabilizing element for zeta = i:
/// gamma(beta0) = [ i, -(1+i) beta0, -(1-i)|beta0|^2 ;
///                  0, -1,           -(1-i) conj(beta0) ;
///                  0,  0,            i ].
/// For beta0 in {0, i} the entries are Gaussian integers and gamma is in
/// Gamma (it equals eps resp. xi^2); for beta0 = (1+i)/2 the square of the
/// returned matrix is the Gamma element sigma eps^2.
pub fn gamma_of_beta0(beta0: Complex64) -> CMat {
    let z = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let one_p = Complex64::new(1.0, 1.0);
    let one_m = Complex64::new(1.0, -1.0);
    [
        [i, -one_p * beta0, -one_m * beta0.norm_sqr()],
        [z, Complex64::new(-1.0, 0.0), -one_m * beta0.conj()],
        [z, z, i],
    ]
}

// --- Siegel strip ---
//
// Diamond coordinates: for beta = x + iy set u = x + y, v = y - x. The square
// with vertices 0, (1+i)/2, i, (-1+i)/2 is exactly {0 <= u <= 1, 0 <= v <= 1},
// and eps (beta -> -i beta) acts by (u, v) -> (v, -u).
//
// Boundary convention (the paper leaves it open): the strip membership keeps
//   - the open edges  e1 = (0, (1+i)/2)    (v = 0)  and  e2 = ((1+i)/2, i)  (u = 1),
//   - the vertices 0, (1+i)/2, i,
// and excludes the opposite open edges e3 (v = 1), e4 (u = 0) and the vertex
// (-1+i)/2. Under the identifications beta -> -i beta (e4 -> e1) and
// beta -> i beta + (1+i) (e3 -> e2, (-1+i)/2 -> (1+i)/2) every
// Gamma_{P0}-orbit of the boundary then has exactly one representative, and
// the three beta values 0, (1+i)/2, i required by the fixed-point
// propositions are all attainable.

fn diamond_uv(beta: Complex64) -> (f64, f64) {
    (beta.re + beta.im, beta.im - beta.re)
}

/// Membership in S = {-1/2 < r <= 1/2, beta in the diamond} with the boundary
/// convention above; `tol` widens every comparison.
pub fn in_siegel_strip(z: &HoroPoint, tol: f64) -> bool {
    let (u, v) = diamond_uv(z.beta);
    if u < -tol || u > 1.0 + tol || v < -tol || v > 1.0 + tol {
        return false;
    }
    // excluded boundary: e4 (u = 0 off the origin), e3 (v = 1 short of i)
    if u <= tol && v > tol {
        return false;
    }
    if v >= 1.0 - tol && u < 1.0 - tol {
        return false;
    }
    if z.r > 0.5 + tol || z.r < -0.5 - tol {
        return false;
    }
    // excluded endpoint r = -1/2 (identified with +1/2 by tau)
    if (z.r + 0.5).abs() <= tol {
        return false;
    }
    true
}

fn round_half_even(x: f64) -> f64 {
    let f = x.floor();
    let frac = x - f;
    if (frac - 0.5).abs() < 1e-12 {
        // tie: to even
        if (f as i64) % 2 == 0 {
            f
        } else {
            f + 1.0
        }
    } else {
        x.round()
    }
}

/// Reduces z into the Siegel strip by an element of Gamma_{P0}, returning the
/// reduced point and a word that maps the input to the output under `act`.
///
/// Steps (each leaves the previously normalized coordinates in their target
/// sets): translate beta to the Voronoi cell of the lattice (1+i)Z[i] by a
/// sigma/sigmacheck word, rotate into the diamond by a power of eps, move the
/// excluded boundary pieces onto the kept ones, and finally translate r into
/// (-1/2, 1/2] by a power of tau. y is never changed: every step has
/// y-parameter 1, and the closed-form action multiplies y by exactly 1.0.
pub fn siegel_reduce(z: &HoroPoint) -> (HoroPoint, SiegelWord) {
    // Decision tolerance; matches the default membership tolerance so the
    // output never lands inside an excluded boundary band.
    const TIE: f64 = 1e-9;
    let mut cur = *z;
    let mut tokens: Vec<SiegelToken> = Vec::new();
    let prepend = |steps: &mut Vec<SiegelToken>, existing: &mut Vec<SiegelToken>| {
        steps.append(existing);
        std::mem::swap(steps, existing);
    };

    // 1. lattice translation: beta = a (1+i) + b (-1+i) with a, b real;
    //    subtract the nearest integer pair (ties to even).
    let a = (cur.beta.re + cur.beta.im) / 2.0;
    let b = (cur.beta.im - cur.beta.re) / 2.0;
    let ma = round_half_even(a) as i64;
    let mb = round_half_even(b) as i64;
    if ma != 0 || mb != 0 {
        // sigma^-ma sigmacheck^-mb = u(-lambda, 2 ma mb)
        let lambda = Complex64::new((ma - mb) as f64, (ma + mb) as f64);
        let p = ParabolicParams {
            y: 1.0,
            zeta: Complex64::new(1.0, 0.0),
            beta: -lambda,
            r: (2 * ma * mb) as f64,
        };
        cur = act_parabolic(&p, &cur);
        let mut steps = Vec::new();
        for _ in 0..ma.unsigned_abs() {
            steps.push(if ma > 0 {
                SiegelToken::SigmaInv
            } else {
                SiegelToken::Sigma
            });
        }
        for _ in 0..mb.unsigned_abs() {
            steps.push(if mb > 0 {
                SiegelToken::SigmaCheckInv
            } else {
                SiegelToken::SigmaCheck
            });
        }
        prepend(&mut steps, &mut tokens);
    }

    // 2. rotate into the diamond: eps acts by (u, v) -> (v, -u); pick the
    //    least k in 0..4 with both coordinates >= 0 (up to the tie tolerance).
    let (mut u, mut v) = diamond_uv(cur.beta);
    let mut k = 0;
    while k < 4 && !(u >= -TIE && v >= -TIE) {
        let (nu, nv) = (v, -u);
        u = nu;
        v = nv;
        k += 1;
    }
    debug_assert!(k < 4, "lattice-reduced beta must rotate into the diamond");
    if k > 0 {
        let zeta = Complex64::new(0.0, 1.0).powu(k as u32);
        let p = ParabolicParams {
            y: 1.0,
            zeta,
            beta: Complex64::new(0.0, 0.0),
            r: 0.0,
        };
        cur = act_parabolic(&p, &cur);
        let mut steps = vec![SiegelToken::Eps; k];
        prepend(&mut steps, &mut tokens);
    }

    // 3. excluded boundary pieces: v = 1 short of the vertex i maps onto the
    //    kept edge u = 1 by sigma eps^3 (beta -> i beta + 1 + i); u = 0 off
    //    the origin maps onto the kept edge v = 0 by one more eps.
    let (u, v) = diamond_uv(cur.beta);
    if v >= 1.0 - TIE && u < 1.0 - TIE {
        let p = ParabolicParams {
            y: 1.0,
            zeta: Complex64::new(0.0, -1.0),
            beta: Complex64::new(1.0, 1.0),
            r: 0.0,
        };
        cur = act_parabolic(&p, &cur);
        let mut steps = vec![
            SiegelToken::Sigma,
            SiegelToken::Eps,
            SiegelToken::Eps,
            SiegelToken::Eps,
        ];
        prepend(&mut steps, &mut tokens);
    } else if u <= TIE && v > TIE {
        let p = ParabolicParams {
            y: 1.0,
            zeta: Complex64::new(0.0, 1.0),
            beta: Complex64::new(0.0, 0.0),
            r: 0.0,
        };
        cur = act_parabolic(&p, &cur);
        let mut steps = vec![SiegelToken::Eps];
        prepend(&mut steps, &mut tokens);
    }

    // 4. translate r into (-1/2, 1/2]; if the cut would land within TIE of
    //    the excluded endpoint -1/2, take the tau-equivalent +1/2 instead.
    let mut m = (cur.r - 0.5).ceil() as i64;
    if cur.r - m as f64 <= -0.5 + TIE {
        m -= 1;
    }
    if m != 0 {
        let p = ParabolicParams {
            y: 1.0,
            zeta: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
            r: -(m as f64),
        };
        cur = act_parabolic(&p, &cur);
        let mut steps = Vec::new();
        for _ in 0..m.unsigned_abs() {
            steps.push(if m > 0 {
                SiegelToken::TauInv
            } else {
                SiegelToken::Tau
            });
        }
        prepend(&mut steps, &mut tokens);
    }

    (cur, SiegelWord { tokens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::form_q_c;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn base_vector_norm() {
        let v0 = base_vector();
        let q = form_q_c(&v0.v, &v0.v);
        assert!((q.re - 2.0).abs() < 1e-15 && q.im.abs() < 1e-15);
    }

    #[test]
    fn horo_vector_roundtrip() {
        let z = HoroPoint::new(1.0, c(0.0, 1.0), 0.0);
        let v = horo_to_vector(&z);
        assert!((v.v[0] - c(0.0, 1.5)).norm() < 1e-15);
        assert!((v.v[1] - c(1.0, 0.0)).norm() < 1e-15);
        let back = vector_to_horo(&v.v).unwrap();
        assert!(back.dist(&z) < 1e-12);

        let base = vector_to_horo(&base_vector().v).unwrap();
        assert!(base.dist(&HoroPoint::new(1.0, c(0.0, 0.0), 0.0)) < 1e-15);

        // boundary vector rejected
        assert!(vector_to_horo(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).is_err());
        assert!(vector_to_horo(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn act_examples() {
        let eps = generator(GeneratorName::Epsilon);
        let tau = generator(GeneratorName::Tau);
        let z = HoroPoint::new(1.3, c(0.0, 0.0), 0.4);
        assert!(act(&eps, &z).unwrap().dist(&z) < 1e-12);
        let z = HoroPoint::new(1.0, c(0.0, 1.0), 0.0);
        assert!(act(&eps, &z).unwrap().dist(&HoroPoint::new(1.0, c(1.0, 0.0), 0.0)) < 1e-12);
        let z = HoroPoint::new(1.0, c(0.0, 0.0), 0.0);
        assert!(act(&tau, &z).unwrap().dist(&HoroPoint::new(1.0, c(0.0, 0.0), 1.0)) < 1e-12);
    }

    #[test]
    fn parabolic_action_examples() {
        let z = HoroPoint::new(1.0, c(1.0, 0.0), 1.0);
        let p = ParabolicParams {
            y: 2.0,
            zeta: c(1.0, 0.0),
            beta: c(0.0, 0.0),
            r: 0.0,
        };
        let out = act_parabolic(&p, &z);
        assert!(out.dist(&HoroPoint::new(2.0, c(2.0, 0.0), 4.0)) < 1e-12);

        // tau case
        let p = ParabolicParams {
            y: 1.0,
            zeta: c(1.0, 0.0),
            beta: c(0.0, 0.0),
            r: 1.0,
        };
        let z = HoroPoint::new(0.7, c(0.3, -0.2), 0.1);
        let out = act_parabolic(&p, &z);
        assert!(out.dist(&HoroPoint::new(0.7, c(0.3, -0.2), 1.1)) < 1e-12);
    }

    #[test]
    fn parabolic_matches_matrix_action() {
        // sigma = u(1+i, 0), sigmacheck = u(-1+i, 0), tau = u(0, 1), eps = m(i)
        let cases = [
            (GeneratorName::Sigma, c(1.0, 1.0), 0.0, c(1.0, 0.0)),
            (GeneratorName::SigmaCheck, c(-1.0, 1.0), 0.0, c(1.0, 0.0)),
            (GeneratorName::Tau, c(0.0, 0.0), 1.0, c(1.0, 0.0)),
            (GeneratorName::Epsilon, c(0.0, 0.0), 0.0, c(0.0, 1.0)),
        ];
        let z = HoroPoint::new(0.83, c(0.37, -0.61), 0.29);
        for (name, beta, r, zeta) in cases {
            let p = ParabolicParams { y: 1.0, zeta, beta, r };
            let direct = act(&generator(name), &z).unwrap();
            let closed = act_parabolic(&p, &z);
            assert!(direct.dist(&closed) < 1e-12, "{:?}", name);
        }
    }

    #[test]
    fn fixed_point_condition_values() {
        let (beta, r) = fixed_point_conditions(c(0.0, 1.0), c(0.0, 0.0));
        assert!(beta.norm() < 1e-15 && r.abs() < 1e-15);
        let (beta, r) = fixed_point_conditions(c(0.0, 1.0), c(0.0, 1.0));
        assert!((beta - c(-1.0, 1.0)).norm() < 1e-15);
        assert!((r - 1.0).abs() < 1e-15);
        let (beta, r) = fixed_point_conditions(c(1.0, 0.0), c(0.4, 0.7));
        assert!(beta.norm() < 1e-15 && r.abs() < 1e-15);
    }

    #[test]
    fn strip_membership() {
        let t = 1e-9;
        assert!(in_siegel_strip(&HoroPoint::new(1.0, c(0.0, 0.0), 0.0), t));
        assert!(in_siegel_strip(&HoroPoint::new(1.0, c(0.0, 1.0), 0.5), t));
        assert!(!in_siegel_strip(&HoroPoint::new(1.0, c(1.0, 0.0), 0.0), t));
        // kept edge midpoints and vertices
        assert!(in_siegel_strip(&HoroPoint::new(1.0, c(0.25, 0.25), 0.0), t));
        assert!(in_siegel_strip(&HoroPoint::new(1.0, c(0.25, 0.75), 0.0), t));
        assert!(in_siegel_strip(&HoroPoint::new(1.0, c(0.5, 0.5), 0.0), t));
        // excluded edge midpoints and vertex
        assert!(!in_siegel_strip(&HoroPoint::new(1.0, c(-0.25, 0.25), 0.0), t));
        assert!(!in_siegel_strip(&HoroPoint::new(1.0, c(-0.25, 0.75), 0.0), t));
        assert!(!in_siegel_strip(&HoroPoint::new(1.0, c(-0.5, 0.5), 0.0), t));
        // r endpoints
        assert!(!in_siegel_strip(&HoroPoint::new(1.0, c(0.0, 0.0), -0.5), t));
        assert!(!in_siegel_strip(&HoroPoint::new(1.0, c(0.0, 0.0), 0.7), t));
    }

    #[test]
    fn reduce_spec_examples() {
        let z = HoroPoint::new(1.0, c(0.0, 0.0), 0.0);
        let (out, word) = siegel_reduce(&z);
        assert!(out.dist(&z) < 1e-15);
        assert!(word.tokens.is_empty());

        let z = HoroPoint::new(1.0, c(1.0, 0.0), 0.0);
        let (out, word) = siegel_reduce(&z);
        assert!(out.dist(&HoroPoint::new(1.0, c(0.0, 1.0), 0.0)) < 1e-12);
        assert_eq!(word.to_string(), "eps eps eps");

        let z = HoroPoint::new(1.0, c(0.0, 0.0), 7.0 / 3.0);
        let (out, word) = siegel_reduce(&z);
        assert!(out.dist(&HoroPoint::new(1.0, c(0.0, 0.0), 1.0 / 3.0)) < 1e-12);
        assert_eq!(word.to_string(), "tau~ tau~");
    }

    #[test]
    fn reduce_word_reproduces_output() {
        let samples = [
            HoroPoint::new(0.9, c(2.7, -1.3), 4.6),
            HoroPoint::new(1.7, c(-0.8, 0.2), -2.1),
            HoroPoint::new(0.4, c(5.5, 5.5), 0.0),
            HoroPoint::new(2.0, c(-0.5, 0.5), -0.5),
        ];
        for z in samples {
            let (out, word) = siegel_reduce(&z);
            assert!(in_siegel_strip(&out, 1e-9), "{z:?} -> {out:?}");
            assert_eq!(out.y, z.y, "y must be unchanged exactly");
            let g = word.evaluate();
            assert!(g.is_gamma_member());
            let via_matrix = act(&g, &z).unwrap();
            assert!(via_matrix.dist(&out) < 1e-9, "{z:?}: {via_matrix:?} vs {out:?}");
        }
    }

    #[test]
    fn point_text_parse() {
        let z = HoroPoint::parse("2,0,0").unwrap();
        assert!(z.dist(&HoroPoint::new(2.0, c(0.0, 0.0), 0.0)) < 1e-15);
        let z = HoroPoint::parse("1,i,0.5").unwrap();
        assert!(z.dist(&HoroPoint::new(1.0, c(0.0, 1.0), 0.5)) < 1e-15);
        let z = HoroPoint::parse("0.9,0.2+0.1i,0").unwrap();
        assert!(z.dist(&HoroPoint::new(0.9, c(0.2, 0.1), 0.0)) < 1e-15);
        let z = HoroPoint::parse(r#"{"y": 1.5, "beta": [0.5, 0.5], "r": -0.25}"#).unwrap();
        assert!(z.dist(&HoroPoint::new(1.5, c(0.5, 0.5), -0.25)) < 1e-15);
        assert!(HoroPoint::parse("0,0,0").is_err());
        assert!(HoroPoint::parse("1,0").is_err());
    }
}

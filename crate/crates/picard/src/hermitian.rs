//! Exact 3x3 matrix algebra over Z[i], the Hermitian form Q, membership in
//! Gamma = SU(2,1; Z[i]), and the generator catalog
//!
//!   w     = [ 0  0 -1; 0 1  0; 1 0 0 ]
//!   sigma = [ 1 1+i  i; 0 1 1+i; 0 0 1 ]      sigma_check = conjugate translation
//!   tau   = [ 1  0   1; 0 1  0; 0 0 1 ]
//!   eps   = diag(i, -1, i)
//!   xi    = [ 1 -1-i  i; 1-i -1 0; 1-i -1-i i ]
//!
//! The form matrix is C = [0 0 i; 0 -1 0; -i 0 0] and Gamma = {g in SL3(Z[i])
//! with g* C g = C}.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{GaussInt, GaussVec3};

/// 3x3 complex matrix used wherever floating-point linear algebra is needed.
pub type CMat = [[Complex64; 3]; 3];

/// A 3x3 matrix over Z[i], row-major. When flagged as a group element it
/// satisfies det = 1 and g* C g = C exactly.
///
/// The derived `Ord` (row-major lexicographic on (re, im) entry pairs) is the
/// canonical total order used for deterministic enumeration.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GMatrix {
    pub e: [[GaussInt; 3]; 3],
}

/// Names of the paper's fixed generators.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorName {
    W,
    Sigma,
    SigmaCheck,
    Tau,
    Epsilon,
    Xi,
}

impl GeneratorName {
    pub const ALL: [GeneratorName; 6] = [
        GeneratorName::W,
        GeneratorName::Sigma,
        GeneratorName::SigmaCheck,
        GeneratorName::Tau,
        GeneratorName::Epsilon,
        GeneratorName::Xi,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            GeneratorName::W => "w",
            GeneratorName::Sigma => "sigma",
            GeneratorName::SigmaCheck => "sigmacheck",
            GeneratorName::Tau => "tau",
            GeneratorName::Epsilon => "eps",
            GeneratorName::Xi => "xi",
        }
    }

    pub fn parse(s: &str) -> Result<GeneratorName> {
        match s {
            "w" => Ok(GeneratorName::W),
            "sigma" => Ok(GeneratorName::Sigma),
            "sigmacheck" | "sigma_check" => Ok(GeneratorName::SigmaCheck),
            "tau" => Ok(GeneratorName::Tau),
            "eps" | "epsilon" => Ok(GeneratorName::Epsilon),
            "xi" => Ok(GeneratorName::Xi),
            _ => Err(Error::parse(s, 0, "unknown generator name")),
        }
    }
}

fn gi(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

/// The fixed Hermitian form matrix C.
pub fn form_matrix() -> GMatrix {
    GMatrix::from_i64([
        [(0, 0), (0, 0), (0, 1)],
        [(0, 0), (-1, 0), (0, 0)],
        [(0, -1), (0, 0), (0, 0)],
    ])
}

/// Q(u, v) = u* C v, exact over Z[i]. Conjugate-symmetric:
/// Q(u, v) = conj(Q(v, u)).
pub fn form_q(u: &GaussVec3, v: &GaussVec3) -> GaussInt {
    // (Cv) = (i v3, -v2, -i v1)
    let i = GaussInt::i();
    let t1 = &u.n.conj() * &(&i * &v.q);
    let t2 = &u.p.conj() * &v.p;
    let t3 = &u.q.conj() * &(&i * &v.n);
    &(&t1 - &t2) - &t3
}

/// Q on complex vectors (same matrix C), for floating-point geometry.
pub fn form_q_c(u: &[Complex64; 3], v: &[Complex64; 3]) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    u[0].conj() * (i * v[2]) - u[1].conj() * v[1] - u[2].conj() * (i * v[0])
}

impl GMatrix {
    pub fn from_i64(rows: [[(i64, i64); 3]; 3]) -> Self {
        GMatrix {
            e: rows.map(|row| row.map(|(a, b)| gi(a, b))),
        }
    }

    pub fn identity() -> Self {
        GMatrix::from_i64([
            [(1, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0)],
            [(0, 0), (0, 0), (1, 0)],
        ])
    }

    pub fn is_identity(&self) -> bool {
        *self == GMatrix::identity()
    }

    /// Conjugate transpose g*.
    pub fn star(&self) -> Self {
        let mut out = GMatrix::identity();
        for r in 0..3 {
            for c in 0..3 {
                out.e[r][c] = self.e[c][r].conj();
            }
        }
        out
    }

    pub fn det(&self) -> GaussInt {
        let e = &self.e;
        let m = |r: usize, c: usize| &e[r][c];
        let cof = |a: &GaussInt, b: &GaussInt, c: &GaussInt, d: &GaussInt| &(a * d) - &(b * c);
        let c0 = cof(m(1, 1), m(1, 2), m(2, 1), m(2, 2));
        let c1 = cof(m(1, 0), m(1, 2), m(2, 0), m(2, 2));
        let c2 = cof(m(1, 0), m(1, 1), m(2, 0), m(2, 1));
        &(&(m(0, 0) * &c0) - &(m(0, 1) * &c1)) + &(m(0, 2) * &c2)
    }

    /// Adjugate matrix; g * adj(g) = det(g) * I.
    pub fn adjugate(&self) -> Self {
        let e = &self.e;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
            &(&e[r0][c0] * &e[r1][c1]) - &(&e[r0][c1] * &e[r1][c0])
        };
        let mut out = GMatrix::identity();
        // adj[c][r] = (-1)^{r+c} * minor(r, c)
        let rows = [(1usize, 2usize), (0, 2), (0, 1)];
        for r in 0..3 {
            for c in 0..3 {
                let (r0, r1) = rows[r];
                let (c0, c1) = rows[c];
                let m = cof(r0, r1, c0, c1);
                out.e[c][r] = if (r + c) % 2 == 0 { m } else { -m };
            }
        }
        out
    }

    /// Inverse via the adjugate; requires det = 1 so entries stay in Z[i].
    pub fn inverse(&self) -> Result<Self> {
        if self.det() != GaussInt::one() {
            return Err(Error::NotInGamma("det != 1, adjugate inverse unavailable"));
        }
        Ok(self.adjugate())
    }

    /// det(g) = 1 and g* C g = C, both exact.
    pub fn is_gamma_member(&self) -> bool {
        if self.det() != GaussInt::one() {
            return false;
        }
        let c = form_matrix();
        &(&self.star() * &c) * self == c
    }

    /// Least k <= cap with g^k = I.
    pub fn order(&self, cap: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = &p * self;
        }
        None
    }

    /// Integer power; negative exponents require det = 1.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut out = GMatrix::identity();
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &GaussVec3) -> GaussVec3 {
        let row = |r: usize| {
            &(&(&self.e[r][0] * &v.n) + &(&self.e[r][1] * &v.p)) + &(&self.e[r][2] * &v.q)
        };
        GaussVec3::new(row(0), row(1), row(2))
    }

    pub fn column(&self, c: usize) -> GaussVec3 {
        GaussVec3::new(
            self.e[0][c].clone(),
            self.e[1][c].clone(),
            self.e[2][c].clone(),
        )
    }

    pub fn from_columns(c0: &GaussVec3, c1: &GaussVec3, c2: &GaussVec3) -> Self {
        let mut out = GMatrix::identity();
        for (c, v) in [c0, c1, c2].into_iter().enumerate() {
            out.e[0][c] = v.n.clone();
            out.e[1][c] = v.p.clone();
            out.e[2][c] = v.q.clone();
        }
        out
    }

    pub fn to_complex(&self) -> CMat {
        let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (row, src) in out.iter_mut().zip(&self.e) {
            for (x, e) in row.iter_mut().zip(src) {
                *x = e.to_complex64();
            }
        }
        out
    }

    pub fn mul_cvec(&self, v: &[Complex64; 3]) -> [Complex64; 3] {
        let m = self.to_complex();
        cmat_mul_vec(&m, v)
    }

    /// Parses the matrix text format "a,b,c;d,e,f;g,h,k" with Gaussian-integer
    /// entries.
    pub fn parse(s: &str) -> Result<GMatrix> {
        let rows: Vec<&str> = s.split(';').collect();
        if rows.len() != 3 {
            return Err(Error::parse(s, 0, "expected three semicolon-separated rows"));
        }
        let mut out = GMatrix::identity();
        for (r, row) in rows.iter().enumerate() {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 3 {
                return Err(Error::parse(
                    row,
                    0,
                    format!("row {} must have three comma-separated entries", r + 1),
                ));
            }
            for (c, cell) in cols.iter().enumerate() {
                out.e[r][c] = GaussInt::parse(cell)?;
            }
        }
        Ok(out)
    }
}

impl Mul for &GMatrix {
    type Output = GMatrix;
    fn mul(self, rhs: &GMatrix) -> GMatrix {
        let mut out = GMatrix::identity();
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = GaussInt::zero();
                for k in 0..3 {
                    acc = &acc + &(&self.e[r][k] * &rhs.e[k][c]);
                }
                out.e[r][c] = acc;
            }
        }
        out
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.e.iter().enumerate() {
            if r > 0 {
                write!(f, ";")?;
            }
            write!(f, "{},{},{}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

/// The paper's generator catalog; all six are declared elements of Gamma and
/// this is checked in tests.
pub fn generator(name: GeneratorName) -> GMatrix {
    match name {
        GeneratorName::W => GMatrix::from_i64([
            [(0, 0), (0, 0), (-1, 0)],
            [(0, 0), (1, 0), (0, 0)],
            [(1, 0), (0, 0), (0, 0)],
        ]),
        GeneratorName::Sigma => GMatrix::from_i64([
            [(1, 0), (1, 1), (0, 1)],
            [(0, 0), (1, 0), (1, 1)],
            [(0, 0), (0, 0), (1, 0)],
        ]),
        GeneratorName::SigmaCheck => GMatrix::from_i64([
            [(1, 0), (-1, 1), (0, 1)],
            [(0, 0), (1, 0), (1, -1)],
            [(0, 0), (0, 0), (1, 0)],
        ]),
        GeneratorName::Tau => GMatrix::from_i64([
            [(1, 0), (0, 0), (1, 0)],
            [(0, 0), (1, 0), (0, 0)],
            [(0, 0), (0, 0), (1, 0)],
        ]),
        GeneratorName::Epsilon => GMatrix::from_i64([
            [(0, 1), (0, 0), (0, 0)],
            [(0, 0), (-1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 1)],
        ]),
        GeneratorName::Xi => GMatrix::from_i64([
            [(1, 0), (-1, -1), (0, 1)],
            [(1, -1), (-1, 0), (0, 0)],
            [(1, -1), (-1, -1), (0, 1)],
        ]),
    }
}

/// Evaluates a word expression over the generator catalog, e.g.
/// "eps*w", "sigma*eps*w*sigma~", "xi^2", "tau^-1*sigma*w". Factors are
/// separated by '*'; a factor is a generator name with an optional integer
/// power "^k" or an inverse mark "~". The product is taken left to right.
/// The empty string (or "1") is the identity.
pub fn parse_word(expr: &str) -> Result<GMatrix> {
    let s = expr.trim();
    if s.is_empty() || s == "1" {
        return Ok(GMatrix::identity());
    }
    let mut acc = GMatrix::identity();
    for factor in s.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            return Err(Error::parse(expr, 0, "empty factor"));
        }
        let (name_part, power): (&str, i64) = if let Some(stripped) = f.strip_suffix('~') {
            (stripped, -1)
        } else if let Some(caret) = f.find('^') {
            let exp: i64 = f[caret + 1..].parse().map_err(|_| {
                Error::parse(expr, 0, format!("bad exponent in factor {f:?}"))
            })?;
            (&f[..caret], exp)
        } else {
            (f, 1)
        };
        let name_part = name_part.trim();
        if name_part.is_empty() {
            return Err(Error::parse(expr, 0, format!("bad factor {f:?}")));
        }
        let m = GeneratorName::parse(name_part)
            .map(generator)
            .or_else(|_| GMatrix::parse(name_part))?;
        acc = &acc * &m.pow(power)?;
    }
    Ok(acc)
}

// --- small complex-matrix helpers shared by the geometry modules ---

pub fn cmat_identity() -> CMat {
    let z = Complex64::new(0.0, 0.0);
    let o = Complex64::new(1.0, 0.0);
    [[o, z, z], [z, o, z], [z, z, o]]
}

pub fn cmat_mul(a: &CMat, b: &CMat) -> CMat {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..3 {
                acc += a[r][k] * b[k][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

pub fn cmat_mul_vec(a: &CMat, v: &[Complex64; 3]) -> [Complex64; 3] {
    let mut out = [Complex64::new(0.0, 0.0); 3];
    for (r, row) in a.iter().enumerate() {
        out[r] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_values() {
        let e1 = GaussVec3::from_i64((1, 0), (0, 0), (0, 0));
        let e2 = GaussVec3::from_i64((0, 0), (1, 0), (0, 0));
        let e3 = GaussVec3::from_i64((0, 0), (0, 0), (1, 0));
        assert_eq!(form_q(&e1, &e1), GaussInt::zero());
        assert_eq!(form_q(&e2, &e2), GaussInt::new(-1, 0));
        assert_eq!(form_q(&e1, &e3), GaussInt::i());
        // conjugate symmetry
        assert_eq!(form_q(&e3, &e1), GaussInt::new(0, -1));
    }

    #[test]
    fn generators_in_gamma() {
        for name in GeneratorName::ALL {
            assert!(generator(name).is_gamma_member(), "{:?}", name);
        }
        assert!(GMatrix::identity().is_gamma_member());
        let diag2 = GMatrix::from_i64([
            [(2, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0)],
            [(0, 0), (0, 0), (1, 0)],
        ]);
        assert!(!diag2.is_gamma_member());
    }

    #[test]
    fn orders() {
        let w = generator(GeneratorName::W);
        let eps = generator(GeneratorName::Epsilon);
        let xi = generator(GeneratorName::Xi);
        let tau = generator(GeneratorName::Tau);
        assert_eq!(eps.order(20), Some(4));
        assert_eq!(xi.order(20), Some(8));
        assert_eq!(tau.order(20), None);
        let tew = &(&tau * &eps) * &w;
        assert_eq!(tew.order(20), Some(12));
        let ew = &eps * &w;
        assert_eq!(ew.order(20), Some(2));
        assert_eq!(
            ew,
            GMatrix::from_i64([
                [(0, 0), (0, 0), (0, -1)],
                [(0, 0), (-1, 0), (0, 0)],
                [(0, 1), (0, 0), (0, 0)],
            ])
        );
    }

    #[test]
    fn inverse_is_exact() {
        let tau = generator(GeneratorName::Tau);
        let inv = tau.inverse().unwrap();
        assert_eq!(inv.e[0][2], GaussInt::new(-1, 0));
        assert!((&tau * &inv).is_identity());
        let xi = generator(GeneratorName::Xi);
        assert!((&xi * &xi.inverse().unwrap()).is_identity());
    }

    #[test]
    fn membership_closed_under_product() {
        let w = generator(GeneratorName::W);
        let xi = generator(GeneratorName::Xi);
        let g = &w * &xi;
        assert!(g.is_gamma_member());
        assert!(g.inverse().unwrap().is_gamma_member());
    }

    #[test]
    fn matrix_text_roundtrip() {
        let w = generator(GeneratorName::W);
        assert_eq!(w.to_string(), "0,0,-1;0,1,0;1,0,0");
        assert_eq!(GMatrix::parse("0,0,-1;0,1,0;1,0,0").unwrap(), w);
        assert!(GMatrix::parse("1,2;3,4").is_err());
    }

    #[test]
    fn word_expressions() {
        let eps = generator(GeneratorName::Epsilon);
        let w = generator(GeneratorName::W);
        let sigma = generator(GeneratorName::Sigma);
        assert_eq!(parse_word("eps*w").unwrap(), &eps * &w);
        assert_eq!(parse_word("xi^2").unwrap(), generator(GeneratorName::Xi).pow(2).unwrap());
        let conj = &(&(&sigma * &eps) * &w) * &sigma.inverse().unwrap();
        assert_eq!(parse_word("sigma*eps*w*sigma~").unwrap(), conj);
        assert_eq!(parse_word("tau^-1").unwrap(), generator(GeneratorName::Tau).inverse().unwrap());
        assert_eq!(parse_word("1").unwrap(), GMatrix::identity());
        assert!(parse_word("bogus").is_err());
    }
}

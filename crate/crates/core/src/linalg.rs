//! Exact scalars and dense matrices over ℚ or a prime field.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported prime; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(q) => write!(f, "F_{q}"),
        }
    }
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(q: u64) -> Result<()> {
    if is_prime(q) && q < MAX_PRIME {
        Ok(())
    } else {
        Err(Error::NotPrime(q))
    }
}

/// A single exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExactScalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl ExactScalar {
    pub fn field(&self) -> Field {
        match self {
            ExactScalar::Rational(_) => Field::Rational,
            ExactScalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactScalar::Rational(r) => r.is_zero(),
            ExactScalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn integer(n: i64) -> Self {
        ExactScalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(field: Field) -> Self {
        match field {
            Field::Rational => ExactScalar::integer(0),
            Field::Prime(q) => ExactScalar::Prime {
                value: 0,
                modulus: q,
            },
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExactScalar::Rational(r) => ExactScalar::Rational(-r),
            ExactScalar::Prime { value, modulus } => ExactScalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn add(&self, other: &ExactScalar) -> Result<Self> {
        match (self, other) {
            (ExactScalar::Rational(a), ExactScalar::Rational(b)) => {
                Ok(ExactScalar::Rational(a + b))
            }
            (
                ExactScalar::Prime {
                    value: a,
                    modulus: q,
                },
                ExactScalar::Prime {
                    value: b,
                    modulus: q2,
                },
            ) if q == q2 => Ok(ExactScalar::Prime {
                value: (a + b) % q,
                modulus: *q,
            }),
            _ => Err(Error::MixedFields),
        }
    }
}

/// Parses `"n"` or `"p/q"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::InvalidScalar(text.to_string());
    let r = match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?),
    };
    Ok(r)
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Image of a rational in `F_q`.
pub fn rational_mod(r: &BigRational, q: u64) -> Result<u64> {
    let qb = BigInt::from(q);
    let den = r.denom().mod_floor(&qb);
    if den.is_zero() {
        return Err(Error::BadDenominator(q));
    }
    let num = r.numer().mod_floor(&qb).to_u64().unwrap_or(0);
    let den = den.to_u64().unwrap_or(1);
    Ok(num * inv_mod(den, q) % q)
}

pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, q: u64) -> u64 {
    let mut r = 1 % q;
    a %= q;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % q;
        }
        a = a * a % q;
        e >>= 1;
    }
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Entries {
    Rational(Vec<BigRational>),
    Prime { modulus: u64, data: Vec<u64> },
}

/// Dense row-major matrix whose entries share one field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Entries,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        let entries = match field {
            Field::Rational => Entries::Rational(vec![BigRational::zero(); rows * cols]),
            Field::Prime(q) => Entries::Prime {
                modulus: q,
                data: vec![0; rows * cols],
            },
        };
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rationals(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        ExactMatrix {
            rows,
            cols,
            entries: Entries::Rational(data),
        }
    }

    pub fn from_residues(modulus: u64, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|x| x % modulus).collect();
        ExactMatrix {
            rows,
            cols,
            entries: Entries::Prime { modulus, data },
        }
    }

    /// Integer entries given row by row.
    pub fn from_int_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols);
                r.iter()
                    .map(|&x| BigRational::from_integer(BigInt::from(x)))
            })
            .collect();
        Self::from_rationals(rows.len(), cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        match &self.entries {
            Entries::Rational(_) => Field::Rational,
            Entries::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> ExactScalar {
        let k = r * self.cols + c;
        match &self.entries {
            Entries::Rational(d) => ExactScalar::Rational(d[k].clone()),
            Entries::Prime { modulus, data } => ExactScalar::Prime {
                value: data[k],
                modulus: *modulus,
            },
        }
    }

    pub fn is_zero_at(&self, r: usize, c: usize) -> bool {
        let k = r * self.cols + c;
        match &self.entries {
            Entries::Rational(d) => d[k].is_zero(),
            Entries::Prime { data, .. } => data[k] == 0,
        }
    }

    /// Overwrites one entry; the scalar must live over the matrix field.
    pub fn set(&mut self, r: usize, c: usize, value: ExactScalar) -> Result<()> {
        let k = r * self.cols + c;
        match (&mut self.entries, value) {
            (Entries::Rational(d), ExactScalar::Rational(v)) => d[k] = v,
            (Entries::Prime { modulus, data }, ExactScalar::Prime { value, modulus: m })
                if *modulus == m =>
            {
                data[k] = value % m
            }
            _ => return Err(Error::MixedFields),
        }
        Ok(())
    }

    pub fn rational_entries(&self) -> Option<&[BigRational]> {
        match &self.entries {
            Entries::Rational(d) => Some(d),
            Entries::Prime { .. } => None,
        }
    }

    /// Entry-wise image in `F_q`.
    pub fn reduce_mod(&self, q: u64) -> Result<ExactMatrix> {
        check_prime(q)?;
        let data = match &self.entries {
            Entries::Rational(d) => d
                .iter()
                .map(|x| rational_mod(x, q))
                .collect::<Result<Vec<_>>>()?,
            Entries::Prime { modulus, data } if *modulus == q => data.clone(),
            Entries::Prime { .. } => return Err(Error::MixedFields),
        };
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: Entries::Prime { modulus: q, data },
        })
    }

    /// Residues row-major; only for prime-field matrices.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.entries {
            Entries::Prime { data, .. } => Some(data),
            Entries::Rational(_) => None,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("product".into()));
        }
        let (n, m, p) = (self.rows, self.cols, other.cols);
        match (&self.entries, &other.entries) {
            (Entries::Rational(a), Entries::Rational(b)) => {
                let mut out = vec![BigRational::zero(); n * p];
                for i in 0..n {
                    for k in 0..m {
                        let x = &a[i * m + k];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..p {
                            out[i * p + j] += x * &b[k * p + j];
                        }
                    }
                }
                Ok(Self::from_rationals(n, p, out))
            }
            (
                Entries::Prime {
                    modulus: q,
                    data: a,
                },
                Entries::Prime {
                    modulus: q2,
                    data: b,
                },
            ) if q == q2 => {
                let mut out = vec![0u64; n * p];
                for i in 0..n {
                    for k in 0..m {
                        let x = a[i * m + k];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..p {
                            out[i * p + j] = (out[i * p + j] + x * b[k * p + j]) % q;
                        }
                    }
                }
                Ok(Self::from_residues(*q, n, p, out))
            }
            _ => Err(Error::MixedFields),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack".into()));
        }
        if self.field() != other.field() {
            return Err(Error::MixedFields);
        }
        let cols = self.cols + other.cols;
        let mut out = ExactMatrix::zeros(self.field(), self.rows, cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c))?;
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c))?;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        match &self.entries {
            Entries::Rational(d) => rank_with(&RationalOps, d.clone(), self.rows, self.cols),
            Entries::Prime { modulus, data } => {
                rank_with(&PrimeOps(*modulus), data.clone(), self.rows, self.cols)
            }
        }
    }
}

trait FieldOps {
    type E: Clone;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - b`
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
}

struct RationalOps;

impl FieldOps for RationalOps {
    type E = BigRational;
    fn is_zero(&self, x: &BigRational) -> bool {
        x.is_zero()
    }
    fn inv(&self, x: &BigRational) -> BigRational {
        x.recip()
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
}

struct PrimeOps(u64);

impl FieldOps for PrimeOps {
    type E = u64;
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn inv(&self, x: &u64) -> u64 {
        inv_mod(*x, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
}

fn rank_with<F: FieldOps>(ops: &F, mut m: Vec<F::E>, rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !ops.is_zero(&m[r * cols + c])) else {
            continue;
        };
        for k in 0..cols {
            m.swap(p * cols + k, rank * cols + k);
        }
        let inv = ops.inv(&m[rank * cols + c]);
        for r in rank + 1..rows {
            if ops.is_zero(&m[r * cols + c]) {
                continue;
            }
            let f = ops.mul(&m[r * cols + c], &inv);
            for k in c..cols {
                let v = ops.mul(&f, &m[rank * cols + k]);
                m[r * cols + k] = ops.sub(&m[r * cols + k], &v);
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

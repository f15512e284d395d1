//! Finite commutative rings with identity: `Z/n` and `F_{p^k}`.
//!
//! Elements are small handles (`Elem`) carrying a fingerprint of their ring;
//! all arithmetic goes through the owning [`Ring`]. Mixing elements of two
//! different rings is a hard error.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Largest supported ring size.
pub const MAX_RING_SIZE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ParseError: {0}")]
    ParseError(String),
    #[error("NotPrime: characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("ReduciblePolynomial: {0}")]
    ReduciblePolynomial(String),
    #[error("ModulusTooSmall: modulus {0} < 2")]
    ModulusTooSmall(u64),
    #[error("TooLarge: ring has {0} elements, limit is {MAX_RING_SIZE}")]
    TooLarge(u64),
    #[error("RingMismatch: operands belong to different rings")]
    RingMismatch,
    #[error("NotAUnit: {0} is not invertible")]
    NotAUnit(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    Zn { n: u32 },
    /// `modulus` holds c0..ck of a monic irreducible polynomial over F_p.
    Fpk { p: u32, k: u32, modulus: Vec<u32> },
}

/// Element handle. `v` is the residue for `Z/n` and `sum c_i p^i` for `F_{p^k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    ring: u64,
    v: u32,
}

impl Elem {
    /// Position of this element in the ring's enumeration order.
    pub fn index(self) -> u32 {
        self.v
    }
}

struct Inner {
    kind: RingKind,
    size: u32,
    id: u64,
    spec: String,
    // u32::MAX marks a non-unit
    inv: Vec<u32>,
}

#[derive(Clone)]
pub struct Ring {
    inner: Arc<Inner>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.inner.spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}
impl Eq for Ring {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Extended Euclid: inverse of `a` mod `n` if it exists.
fn inv_mod(a: i64, n: i64) -> Option<i64> {
    let (mut r0, mut r1) = (n, a.rem_euclid(n));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n))
}

// Dense polynomials over F_p, lowest coefficient first, no trailing zeros.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db] as i64, p as i64).expect("nonzero lead over a field") as u64;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![0u32; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (*r.last().unwrap() as u64 * lead_inv % p as u64) as u32;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            let t = (r[shift + i] as u64 + (p - c) as u64 * bi as u64) % p as u64;
            r[shift + i] = t as u32;
        }
        poly_trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    poly_trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `m` by extended Euclid in F_p[x].
fn poly_inv(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (vec![], vec![1]);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0] as i64, p as i64)? as u32;
    let mut out = poly_mul(&s0, &[c], p);
    out = poly_divrem(&out, m, p).1;
    Some(out)
}

fn check_irreducible(p: u32, k: u32, modulus: &[u32]) -> Result<(), RingError> {
    for d in 1..=k / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d as usize + 1);
            let mut t = idx;
            for _ in 0..d {
                cand.push((t % p as u64) as u32);
                t /= p as u64;
            }
            cand.push(1);
            if poly_divrem(modulus, &cand, p).1.is_empty() {
                return Err(RingError::ReduciblePolynomial(format!(
                    "divisible by {}",
                    show_poly(&cand)
                )));
            }
        }
    }
    Ok(())
}

fn show_poly(c: &[u32]) -> String {
    let mut terms = vec![];
    for (i, &ci) in c.iter().enumerate().rev() {
        if ci == 0 {
            continue;
        }
        let coef = if ci == 1 && i > 0 { String::new() } else { ci.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn parse_u64(s: &str, what: &str) -> Result<u64, RingError> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| RingError::ParseError(format!("bad {what}: {s:?}")))
}

impl Ring {
    /// Parse `Z/<n>` or `F:<p>:<k>:<c0>,...,<ck>`.
    pub fn parse(spec: &str) -> Result<Ring, RingError> {
        let spec = spec.trim();
        if let Some(n) = spec.strip_prefix("Z/") {
            return Ring::zn(parse_u64(n, "modulus")?);
        }
        if let Some(rest) = spec.strip_prefix("F:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 3 {
                return Err(RingError::ParseError(format!(
                    "expected F:<p>:<k>:<c0,...,ck>, got {spec:?}"
                )));
            }
            let p = parse_u64(parts[0], "characteristic")?;
            let k = parse_u64(parts[1], "degree")?;
            let coeffs = parts[2]
                .split(',')
                .map(|c| parse_u64(c, "coefficient"))
                .collect::<Result<Vec<_>, _>>()?;
            return Ring::fpk(p, k, &coeffs);
        }
        Err(RingError::ParseError(format!(
            "unrecognised ring spec {spec:?}"
        )))
    }

    pub fn zn(n: u64) -> Result<Ring, RingError> {
        if n < 2 {
            return Err(RingError::ModulusTooSmall(n));
        }
        if n > MAX_RING_SIZE {
            return Err(RingError::TooLarge(n));
        }
        let inv = (0..n)
            .map(|a| inv_mod(a as i64, n as i64).map_or(u32::MAX, |x| x as u32))
            .collect();
        Ok(Ring::build(RingKind::Zn { n: n as u32 }, n as u32, format!("Z/{n}"), inv))
    }

    pub fn fpk(p: u64, k: u64, coeffs: &[u64]) -> Result<Ring, RingError> {
        if !is_prime(p) {
            return Err(RingError::NotPrime(p));
        }
        if k == 0 {
            return Err(RingError::ParseError("degree must be at least 1".into()));
        }
        if coeffs.len() as u64 != k + 1 {
            return Err(RingError::ParseError(format!(
                "degree {k} needs {} coefficients, got {}",
                k + 1,
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(RingError::ParseError(format!(
                "coefficient {c} not reduced mod {p}"
            )));
        }
        if coeffs[k as usize] != 1 {
            return Err(RingError::ParseError("modulus polynomial must be monic".into()));
        }
        let size = p.checked_pow(k as u32).filter(|&s| s <= MAX_RING_SIZE);
        let Some(size) = size else {
            return Err(RingError::TooLarge(p.saturating_pow(k.min(64) as u32)));
        };
        let p = p as u32;
        let modulus: Vec<u32> = coeffs.iter().map(|&c| c as u32).collect();
        check_irreducible(p, k as u32, &modulus)?;
        let spec = format!(
            "F:{p}:{k}:{}",
            modulus.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        );
        let kind = RingKind::Fpk { p, k: k as u32, modulus: modulus.clone() };
        let mut inv = vec![u32::MAX; size as usize];
        for v in 1..size as u32 {
            let a = digits(v, p, k as u32);
            if let Some(b) = poly_inv(&a, &modulus, p) {
                inv[v as usize] = undigits(&b, p);
            }
        }
        Ok(Ring::build(kind, size as u32, spec, inv))
    }

    fn build(kind: RingKind, size: u32, spec: String, inv: Vec<u32>) -> Ring {
        let mut h = DefaultHasher::new();
        spec.hash(&mut h);
        let id = h.finish();
        Ring { inner: Arc::new(Inner { kind, size, id, spec, inv }) }
    }

    pub fn kind(&self) -> &RingKind {
        &self.inner.kind
    }

    /// Canonical ring-spec string.
    pub fn spec(&self) -> &str {
        &self.inner.spec
    }

    pub fn size(&self) -> u32 {
        self.inner.size
    }

    fn mk(&self, v: u32) -> Elem {
        Elem { ring: self.inner.id, v }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.ring == self.inner.id
    }

    fn check(&self, a: Elem) -> Result<(), RingError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    /// Element at position `i` of the enumeration order.
    pub fn elem(&self, i: u32) -> Elem {
        assert!(i < self.size(), "element index {i} out of range");
        self.mk(i)
    }

    pub fn zero(&self) -> Elem {
        self.mk(0)
    }

    pub fn one(&self) -> Elem {
        self.mk(1)
    }

    /// Image of an integer under Z -> R.
    pub fn from_int(&self, x: i64) -> Elem {
        match &self.inner.kind {
            RingKind::Zn { n } => self.mk(x.rem_euclid(*n as i64) as u32),
            RingKind::Fpk { p, .. } => self.mk(x.rem_euclid(*p as i64) as u32),
        }
    }

    /// Element with the given coefficient vector (`F_{p^k}`) or single residue (`Z/n`).
    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem, RingError> {
        match &self.inner.kind {
            RingKind::Zn { n } => match c {
                [x] if x < n => Ok(self.mk(*x)),
                _ => Err(RingError::ParseError(format!("bad residue {c:?} for {}", self.spec()))),
            },
            RingKind::Fpk { p, k, .. } => {
                if c.len() != *k as usize || c.iter().any(|x| x >= p) {
                    return Err(RingError::ParseError(format!(
                        "bad coefficient vector {c:?} for {}",
                        self.spec()
                    )));
                }
                Ok(self.mk(undigits(c, *p)))
            }
        }
    }

    /// Coefficient vector c0..c_{k-1} (a single residue for `Z/n`).
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        match &self.inner.kind {
            RingKind::Zn { .. } => vec![a.v],
            RingKind::Fpk { p, k, .. } => digits(a.v, *p, *k),
        }
    }

    pub fn try_add(&self, a: Elem, b: Elem) -> Result<Elem, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.inner.kind {
            RingKind::Zn { n } => self.mk(((a.v as u64 + b.v as u64) % *n as u64) as u32),
            RingKind::Fpk { p, k, .. } => {
                let (x, y) = (digits(a.v, *p, *k), digits(b.v, *p, *k));
                let s: Vec<u32> = x.iter().zip(&y).map(|(u, w)| (u + w) % p).collect();
                self.mk(undigits(&s, *p))
            }
        })
    }

    pub fn try_neg(&self, a: Elem) -> Result<Elem, RingError> {
        self.check(a)?;
        Ok(match &self.inner.kind {
            RingKind::Zn { n } => self.mk((n - a.v) % n),
            RingKind::Fpk { p, k, .. } => {
                let s: Vec<u32> = digits(a.v, *p, *k).iter().map(|u| (p - u) % p).collect();
                self.mk(undigits(&s, *p))
            }
        })
    }

    pub fn try_sub(&self, a: Elem, b: Elem) -> Result<Elem, RingError> {
        let nb = self.try_neg(b)?;
        self.try_add(a, nb)
    }

    pub fn try_mul(&self, a: Elem, b: Elem) -> Result<Elem, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(match &self.inner.kind {
            RingKind::Zn { n } => self.mk(((a.v as u64 * b.v as u64) % *n as u64) as u32),
            RingKind::Fpk { p, k, modulus } => {
                let prod = poly_mul(&digits(a.v, *p, *k), &digits(b.v, *p, *k), *p);
                let r = poly_divrem(&prod, modulus, *p).1;
                self.mk(undigits(&r, *p))
            }
        })
    }

    // Infallible forms for internal use; a ring mismatch here is a programming error.
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.try_add(a, b).unwrap_or_else(|e| panic!("{e}"))
    }
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.try_sub(a, b).unwrap_or_else(|e| panic!("{e}"))
    }
    pub fn neg(&self, a: Elem) -> Elem {
        self.try_neg(a).unwrap_or_else(|e| panic!("{e}"))
    }
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.try_mul(a, b).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut base, mut acc) = (a, self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.contains(a) && self.inner.inv[a.v as usize] != u32::MAX
    }

    pub fn inverse(&self, a: Elem) -> Result<Elem, RingError> {
        self.check(a)?;
        match self.inner.inv[a.v as usize] {
            u32::MAX => Err(RingError::NotAUnit(self.show(a))),
            b => Ok(self.mk(b)),
        }
    }

    /// `a / b`, requiring `b` to be a unit.
    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, RingError> {
        Ok(self.mul(a, self.inverse(b)?))
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> Vec<Elem> {
        (0..self.size()).map(|v| self.mk(v)).collect()
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().into_iter().filter(|&a| self.is_unit(a)).collect()
    }

    /// Sh(R): all x with x and 1 - x units.
    pub fn shapes(&self) -> Vec<Elem> {
        self.elements()
            .into_iter()
            .filter(|&x| self.is_shape(x))
            .collect()
    }

    pub fn is_shape(&self, x: Elem) -> bool {
        self.is_unit(x) && self.is_unit(self.sub(self.one(), x))
    }

    /// Wire form: decimal residue, or `[c0,...,c_{k-1}]`.
    pub fn show(&self, a: Elem) -> String {
        match &self.inner.kind {
            RingKind::Zn { .. } => a.v.to_string(),
            RingKind::Fpk { .. } => format!(
                "[{}]",
                self.coeffs(a).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
    }

    /// Inverse of [`Ring::show`].
    pub fn parse_elem(&self, s: &str) -> Result<Elem, RingError> {
        let s = s.trim();
        let c = match s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            Some(body) => body
                .split(|ch: char| ch == ',' || ch.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| parse_u64(t, "coefficient").map(|x| x as u32))
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![parse_u64(s, "residue")? as u32],
        };
        self.from_coeffs(&c)
    }

    pub fn to_json(&self, a: Elem) -> serde_json::Value {
        match &self.inner.kind {
            RingKind::Zn { .. } => serde_json::Value::from(a.v),
            RingKind::Fpk { .. } => serde_json::Value::from(self.coeffs(a)),
        }
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<Elem, RingError> {
        let bad = || RingError::ParseError(format!("bad element {v} for {}", self.spec()));
        match v {
            serde_json::Value::Number(n) => {
                let x = n.as_u64().ok_or_else(bad)?;
                self.from_coeffs(&[u32::try_from(x).map_err(|_| bad())?])
            }
            serde_json::Value::Array(items) => {
                let c = items
                    .iter()
                    .map(|t| t.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(bad))
                    .collect::<Result<Vec<_>, _>>()?;
                self.from_coeffs(&c)
            }
            serde_json::Value::String(s) => self.parse_elem(s),
            _ => Err(bad()),
        }
    }
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// `Z/n` units by gcd, for cross-checking the inverse table.
pub fn zn_is_unit_gcd(a: u64, n: u64) -> bool {
    gcd(a % n, n) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Ring {
        Ring::parse(s).unwrap()
    }

    #[test]
    fn parses_specs() {
        assert_eq!(r("Z/9").size(), 9);
        let f4 = r("F:2:2:1,1,1");
        assert_eq!(f4.size(), 4);
        let names: Vec<String> = f4.elements().iter().map(|&e| f4.show(e)).collect();
        assert_eq!(names, ["[0,0]", "[1,0]", "[0,1]", "[1,1]"]);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(Ring::parse("F:2:2:1,0,1"), Err(RingError::ReduciblePolynomial(_))));
        assert!(matches!(Ring::parse("F:4:1:0,1"), Err(RingError::NotPrime(4))));
        assert!(matches!(Ring::parse("Z/1"), Err(RingError::ModulusTooSmall(1))));
        assert!(matches!(Ring::parse("Z/70000"), Err(RingError::TooLarge(_))));
        assert!(matches!(Ring::parse("F:2:20:1,1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1"), Err(RingError::TooLarge(_))));
        assert!(matches!(Ring::parse("Q"), Err(RingError::ParseError(_))));
        assert!(matches!(Ring::parse("F:3:2:1,0,2"), Err(RingError::ParseError(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let z9 = r("Z/9");
        assert_eq!(z9.add(z9.elem(5), z9.elem(7)), z9.elem(3));
        let f4 = r("F:2:2:1,1,1");
        let a = f4.elem(2);
        assert_eq!(f4.mul(a, a), f4.elem(3));
        assert_eq!(f4.pow(a, 3), f4.one());
        let z15 = r("Z/15");
        assert_eq!(z15.mul(z15.elem(8), z15.elem(2)), z15.one());
    }

    #[test]
    fn mixing_rings_fails() {
        let a = r("Z/9");
        let b = r("Z/5");
        assert_eq!(a.try_add(a.one(), b.one()), Err(RingError::RingMismatch));
        assert_eq!(a.try_mul(b.one(), a.one()), Err(RingError::RingMismatch));
        // the same spec built twice is the same ring
        let a2 = r("Z/9");
        assert_eq!(a.add(a.one(), a2.one()), a.elem(2));
    }

    #[test]
    fn units_and_inverses() {
        let z9 = r("Z/9");
        assert!(!z9.is_unit(z9.elem(3)));
        assert_eq!(z9.inverse(z9.elem(2)).unwrap(), z9.elem(5));
        assert!(matches!(z9.inverse(z9.elem(3)), Err(RingError::NotAUnit(_))));
        let f5 = r("Z/5");
        assert_eq!(f5.inverse(f5.elem(4)).unwrap(), f5.elem(4));
        let z15 = r("Z/15");
        assert!(z15.is_unit(z15.elem(8)));
        let f4 = r("F:2:2:1,1,1");
        assert!(f4.is_unit(f4.elem(2)));
        for n in 2..40u64 {
            let z = Ring::zn(n).unwrap();
            for a in z.elements() {
                assert_eq!(z.is_unit(a), zn_is_unit_gcd(a.index() as u64, n));
            }
        }
    }

    #[test]
    fn shape_sets() {
        let show = |s: &str| {
            let ring = r(s);
            ring.shapes().iter().map(|&e| ring.show(e)).collect::<Vec<_>>().join(" ")
        };
        assert_eq!(show("Z/3"), "2");
        assert_eq!(show("Z/5"), "2 3 4");
        assert_eq!(show("Z/7"), "2 3 4 5 6");
        assert_eq!(show("Z/9"), "2 5 8");
        assert_eq!(show("Z/15"), "2 8 14");
        assert_eq!(show("F:2:2:1,1,1"), "[0,1] [1,1]");
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for spec in ["F:2:2:1,1,1", "F:3:2:1,0,1", "F:2:3:1,1,0,1", "Z/12", "F:2:4:1,1,0,0,1"] {
            let ring = r(spec);
            let els = ring.elements();
            for &a in &els {
                for &b in &els {
                    assert_eq!(ring.add(a, b), ring.add(b, a));
                    assert_eq!(ring.mul(a, b), ring.mul(b, a));
                    for &c in &els {
                        assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
                        assert_eq!(ring.add(ring.add(a, b), c), ring.add(a, ring.add(b, c)));
                        assert_eq!(
                            ring.mul(a, ring.add(b, c)),
                            ring.add(ring.mul(a, b), ring.mul(a, c))
                        );
                    }
                }
                assert_eq!(ring.mul(a, ring.one()), a);
                assert_eq!(ring.add(a, ring.zero()), a);
                assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
            }
        }
    }

    #[test]
    fn wire_round_trip() {
        for spec in ["Z/9", "F:3:2:1,0,1"] {
            let ring = r(spec);
            for a in ring.elements() {
                assert_eq!(ring.parse_elem(&ring.show(a)).unwrap(), a);
                assert_eq!(ring.from_json(&ring.to_json(a)).unwrap(), a);
            }
        }
    }

    #[test]
    fn field_shape_count() {
        for spec in ["Z/2", "Z/3", "Z/5", "Z/7", "F:2:2:1,1,1", "F:3:2:1,0,1", "F:2:3:1,1,0,1", "Z/13"] {
            let ring = r(spec);
            assert_eq!(ring.shapes().len() as u32, ring.size() - 2, "{spec}");
        }
    }
}

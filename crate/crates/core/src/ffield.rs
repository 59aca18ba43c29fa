//! Explicit finite fields `F_{p^k}` with table-driven arithmetic.
//!
//! A [`Field`] is a cheap-to-clone handle; its elements are plain [`Fe`]
//! indices and every operation goes through the owning field, in the style
//! of a ring object. Elements are indexed so that the derived order on
//! [`Fe`] is the lexicographic order on coefficient vectors, low degree
//! first, with entries ordered `0 < 1 < ... < p-1`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default bound on `p^k`.
pub const DEFAULT_CAP: u64 = 128;

/// Hard bound on `p^k`: the add/log tables are quadratic resp. linear in the size.
pub const MAX_FIELD_SIZE: u64 = 1024;

/// An element of some [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fe(u16);

impl Fe {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

struct FieldData {
    p: u32,
    k: u32,
    size: u32,
    /// Monic modulus, coefficients low-to-high, length `k + 1`.
    modulus: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    /// `exp[i] = g^i` for a primitive element `g`, `i < size - 1`.
    exp: Vec<u16>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct Field {
    data: Arc<FieldData>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is a function of (p, k).
        self.data.p == other.data.p && self.data.k == other.data.k
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.data.p, self.data.k, self.data.modulus)
    }
}

pub fn is_prime(n: u32) -> bool {
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

/// Builds `F_{p^k}` under the default cap.
pub fn make_field(p: u32, k: u32) -> Result<Field> {
    Field::with_cap(p, k, DEFAULT_CAP)
}

// Polynomials over F_p, coefficients low-to-high, trailing zeros trimmed.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] * lead_inv % p;
        for i in 0..=db {
            let t = c * b[i] % p;
            r[dr - db + i] = (r[dr - db + i] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Monic polynomials of degree `d` in increasing order of `sum c_i p^i`.
fn monic_polys(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut n| {
        let mut c = Vec::with_capacity(d as usize + 1);
        for _ in 0..d {
            c.push((n % p as u64) as u32);
            n /= p as u64;
        }
        c.push(1);
        c
    })
}

/// Exhaustive factor search up to degree `deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    let deg = poly.len().saturating_sub(1) as u32;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for f in monic_polys(p, d) {
            if poly_rem(&poly, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn with_cap(p: u32, k: u32, cap: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if !(1..=8).contains(&k) {
            return Err(Error::DegreeOutOfRange(k));
        }
        let size = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        let cap = cap.min(MAX_FIELD_SIZE);
        if size > cap {
            return Err(Error::CapExceeded { size, cap });
        }
        let modulus = monic_polys(p, k)
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");
        Ok(Field { data: Arc::new(FieldData::build(p, k, size as u32, modulus)) })
    }

    pub fn p(&self) -> u32 {
        self.data.p
    }

    pub fn k(&self) -> u32 {
        self.data.k
    }

    /// Number of elements `p^k`.
    pub fn size(&self) -> u32 {
        self.data.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.data.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        self.from_coeffs(&[1])
    }

    /// The class of `t` in `F_p[t]/(modulus)`.
    pub fn generator(&self) -> Fe {
        if self.data.k == 1 {
            // modulus is t itself
            self.zero()
        } else {
            self.from_coeffs(&[0, 1])
        }
    }

    pub fn from_int(&self, n: i64) -> Fe {
        let p = self.data.p as i64;
        self.from_coeffs(&[n.rem_euclid(p) as u32])
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        let d = &self.data;
        let mut idx = 0u32;
        for i in 0..d.k as usize {
            let c = coeffs.get(i).copied().unwrap_or(0) % d.p;
            idx = idx * d.p + c;
        }
        Fe(idx as u16)
    }

    pub fn coeffs(&self, e: Fe) -> Vec<u32> {
        self.data.coeffs(e.0 as u32)
    }

    /// All elements in the canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.data.size).map(|i| Fe(i as u16))
    }

    pub fn is_zero(&self, a: Fe) -> bool {
        a.0 == 0
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let s = self.data.size as usize;
        Fe(self.data.add[a.index() * s + b.index()])
    }

    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.data.neg[a.index()])
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let d = &self.data;
        let n = d.size - 1;
        let l = (d.log[a.index()] + d.log[b.index()]) % n;
        Fe(d.exp[l as usize])
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let d = &self.data;
        let n = d.size - 1;
        let l = (n - d.log[a.index()]) % n;
        Some(Fe(d.exp[l as usize]))
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let d = &self.data;
        let n = (d.size - 1) as u64;
        let l = (d.log[a.index()] as u64 * (e % n)) % n;
        Fe(d.exp[l as usize])
    }

    /// Integer multiple `n * a`.
    pub fn mul_int(&self, a: Fe, n: i64) -> Fe {
        self.mul(a, self.from_int(n))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let n = self.data.size - 1;
        let l = self.data.log[a.index()];
        Some(n / gcd(n, l))
    }

    /// Polynomial notation in the generator `a`, or the plain residue for prime fields.
    pub fn fmt_elem(&self, e: Fe) -> String {
        let c = self.coeffs(e);
        if self.data.k == 1 {
            return c[0].to_string();
        }
        let mut terms = Vec::new();
        for (i, &ci) in c.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            terms.push(match (ci, i) {
                (_, 0) => ci.to_string(),
                (1, _) => mono,
                _ => format!("{ci}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Evaluates a polynomial with coefficients in `F_p` (low-to-high) at `x`.
    pub fn eval_prime_poly(&self, poly: &[u32], x: Fe) -> Fe {
        poly.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(self.mul(acc, x), self.from_coeffs(&[c]))
        })
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl FieldData {
    fn coeffs(&self, mut idx: u32) -> Vec<u32> {
        let mut c = vec![0; self.k as usize];
        for i in (0..self.k as usize).rev() {
            c[i] = idx % self.p;
            idx /= self.p;
        }
        c
    }

    fn index(&self, c: &[u32]) -> u32 {
        let mut idx = 0;
        for i in 0..self.k as usize {
            idx = idx * self.p + c.get(i).copied().unwrap_or(0);
        }
        idx
    }

    fn mul_slow(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut prod = vec![0u32; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        poly_rem(&prod, &self.modulus, p)
    }

    fn build(p: u32, k: u32, size: u32, modulus: Vec<u32>) -> FieldData {
        let mut d = FieldData {
            p,
            k,
            size,
            modulus,
            add: Vec::new(),
            neg: Vec::new(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        let s = size as usize;
        let kk = k as usize;
        let mut digits = vec![0u32; s * kk];
        for i in 0..s {
            digits[i * kk..(i + 1) * kk].copy_from_slice(&d.coeffs(i as u32));
        }
        let mut add = vec![0u16; s * s];
        for a in 0..s {
            let da = &digits[a * kk..(a + 1) * kk];
            for b in 0..s {
                let db = &digits[b * kk..(b + 1) * kk];
                let mut idx = 0u32;
                for i in 0..kk {
                    idx = idx * p + (da[i] + db[i]) % p;
                }
                add[a * s + b] = idx as u16;
            }
        }
        let neg = (0..s)
            .map(|a| {
                let mut idx = 0u32;
                for &x in &digits[a * kk..(a + 1) * kk] {
                    idx = idx * p + (p - x) % p;
                }
                idx as u16
            })
            .collect();
        d.add = add;
        d.neg = neg;

        // Primitive element: first nonzero element (canonical order) of order size-1.
        let n = size - 1;
        for cand in 1..size {
            let g = d.coeffs(cand);
            let mut exp = Vec::with_capacity(n as usize);
            let mut cur = vec![1u32];
            let mut ok = true;
            for i in 0..n {
                let idx = d.index(&cur);
                if i > 0 && idx == d.index(&[1]) {
                    ok = false;
                    break;
                }
                exp.push(idx as u16);
                cur = d.mul_slow(&cur, &trim(g.clone()));
            }
            if ok {
                let mut log = vec![0u32; s];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                d.exp = exp;
                d.log = log;
                break;
            }
        }
        assert_eq!(d.exp.len(), n as usize, "no primitive element found");
        d
    }
}

/// Embedding `F_{p^k} -> F_{p^{2k}}` determined by the image of the generator.
#[derive(Clone)]
pub struct Embedding {
    src: Field,
    dst: Field,
    image_of_generator: Fe,
    forward: Vec<Fe>,
    backward: HashMap<Fe, Fe>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?}, t -> {:?})", self.src, self.dst, self.image_of_generator)
    }
}

pub fn embed_subfield(src: &Field, dst: &Field) -> Result<Embedding> {
    Embedding::new(src, dst)
}

impl Embedding {
    /// The generator goes to the smallest root of `src.modulus` in `dst`.
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding> {
        if src.p() != dst.p() || dst.k() != 2 * src.k() {
            return Err(Error::NotQuadraticExtension);
        }
        let root = dst
            .elements()
            .find(|&r| dst.is_zero(dst.eval_prime_poly(src.modulus(), r)))
            .ok_or(Error::NoRoot)?;
        let forward: Vec<Fe> = src
            .elements()
            .map(|e| {
                let c = src.coeffs(e);
                c.iter().rev().fold(dst.zero(), |acc, &ci| {
                    dst.add(dst.mul(acc, root), dst.from_coeffs(&[ci]))
                })
            })
            .collect();
        let backward = src.elements().map(|e| (forward[e.index()], e)).collect();
        Ok(Embedding { src: src.clone(), dst: dst.clone(), image_of_generator: root, forward, backward })
    }

    pub fn src(&self) -> &Field {
        &self.src
    }

    pub fn dst(&self) -> &Field {
        &self.dst
    }

    pub fn image_of_generator(&self) -> Fe {
        self.image_of_generator
    }

    pub fn map(&self, e: Fe) -> Fe {
        self.forward[e.index()]
    }

    /// Inverse image, if `e` lies in the embedded subfield.
    pub fn preimage(&self, e: Fe) -> Option<Fe> {
        self.backward.get(&e).copied()
    }
}

/// `e^q` with `q = #base`, for `e` in `field`.
pub fn frobenius_map(field: &Field, e: Fe, base: &Field) -> Result<Fe> {
    if field.p() != base.p() || !field.k().is_multiple_of(base.k()) {
        return Err(Error::FieldMismatch(format!("{base:?} is not a subfield of {field:?}")));
    }
    if e.index() >= field.size() as usize {
        return Err(Error::FieldMismatch("element outside the field".into()));
    }
    Ok(field.pow(e, base.size() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn sixteen_modulus_is_first_irreducible_found_by_scan() {
        // Independent scan: root test plus division by the only irreducible quadratic.
        let scan = (0u32..8)
            .map(|n| [1, n & 1, (n >> 1) & 1, (n >> 2) & 1, 1])
            .find(|c| {
                let has_root = (0u32..2).any(|x| c.iter().enumerate().map(|(i, &ci)| ci * x.pow(i as u32)).sum::<u32>() % 2 == 0);
                let quad = poly_rem(c, &[1, 1, 1], 2).is_empty();
                !has_root && !quad
            })
            .unwrap();
        assert_eq!(make_field(2, 4).unwrap().modulus(), &scan);
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(make_field(2, 9).unwrap_err(), Error::DegreeOutOfRange(9));
        assert!(matches!(make_field(2, 8).unwrap_err(), Error::CapExceeded { size: 256, .. }));
        assert!(Field::with_cap(2, 8, 256).is_ok());
    }

    #[test]
    fn fermat_and_units_exhaustive() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2)] {
            let f = make_field(p, k).unwrap();
            let q = f.size() as u64;
            let units = f.elements().filter(|&a| f.inv(a).is_some()).count() as u64;
            assert_eq!(units, q - 1);
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a);
                if let Some(b) = f.inv(a) {
                    assert_eq!(f.mul(a, b), f.one());
                }
            }
        }
    }

    #[test]
    fn element_order_is_low_degree_first() {
        let f = make_field(3, 2).unwrap();
        let e1 = f.from_coeffs(&[0, 2]);
        let e2 = f.from_coeffs(&[1, 0]);
        assert!(e1 < e2);
        assert_eq!(f.coeffs(f.from_coeffs(&[2, 1])), vec![2, 1]);
    }

    #[test]
    fn frobenius_on_f4() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let t = f4.generator();
        assert_eq!(frobenius_map(&f4, t, &f2).unwrap(), f4.add(t, f4.one()));
        let f9 = make_field(3, 2).unwrap();
        assert!(frobenius_map(&f9, t, &f2).is_err());
    }

    #[test]
    fn embedding_f2_f4_and_f4_f16() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = embed_subfield(&f2, &f4).unwrap();
        assert_eq!(e.image_of_generator(), f4.zero());
        assert_eq!(e.map(f2.one()), f4.one());

        let e = embed_subfield(&f4, &f16).unwrap();
        let roots: Vec<Fe> = f16
            .elements()
            .filter(|&r| {
                let r2 = f16.mul(r, r);
                f16.is_zero(f16.add(f16.add(r2, r), f16.one()))
            })
            .collect();
        assert_eq!(roots.len(), 2);
        assert_eq!(e.image_of_generator(), roots[0]);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.map(f4.mul(a, b)), f16.mul(e.map(a), e.map(b)));
                assert_eq!(e.map(f4.add(a, b)), f16.add(e.map(a), e.map(b)));
            }
        }
        assert!(matches!(embed_subfield(&f2, &f16), Err(Error::NotQuadraticExtension)));
    }

    #[test]
    fn frobenius_fixed_field_is_embedded_subfield() {
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2), (2, 3)] {
            let base = make_field(p, k).unwrap();
            let big = make_field(p, 2 * k).unwrap();
            let emb = embed_subfield(&base, &big).unwrap();
            let fixed: Vec<Fe> = big.elements().filter(|&e| frobenius_map(&big, e, &base).unwrap() == e).collect();
            let mut image: Vec<Fe> = base.elements().map(|e| emb.map(e)).collect();
            image.sort();
            assert_eq!(fixed, image);
            for e in big.elements() {
                let f1 = frobenius_map(&big, e, &base).unwrap();
                assert_eq!(frobenius_map(&big, f1, &base).unwrap(), e);
            }
        }
    }
}

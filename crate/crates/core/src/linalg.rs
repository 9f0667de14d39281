//! Sparse linear algebra over exact fields, behind named interchangeable backends.
//!
//! `exact` works over the rationals by fraction-free integer elimination: rows are
//! kept primitive (gcd 1) in `i128`, and a computation that overflows is redone
//! with big integers. `prime` works modulo a prime `p`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Sparse vector: strictly increasing column indices, nonzero values.
pub type SparseVec = Vec<(u32, i64)>;

pub const DEFAULT_PRIME: u64 = 32003;

pub trait LinearBackend: Send + Sync + Debug {
    fn name(&self) -> String;
    /// Rank of the span of `rows`.
    fn rank(&self, rows: &[SparseVec]) -> Result<usize>;
    /// Basis of the null space `{x : row·x = 0 for all rows}` in `ncols` unknowns.
    fn kernel(&self, rows: &[SparseVec], ncols: usize) -> Result<Vec<SparseVec>>;
    /// Indices of a maximal subset of `candidates` independent modulo the span of `base`,
    /// chosen greedily in order.
    fn independent_modulo(&self, base: &[SparseVec], candidates: &[SparseVec]) -> Result<Vec<usize>>;
    /// Coefficients expressing `target` in terms of `spanning` modulo `base`, if possible.
    fn solve_modulo(&self, base: &[SparseVec], spanning: &[SparseVec], target: &SparseVec) -> Result<bool>;
}

#[derive(Debug)]
struct Overflow;

/// Scalar arithmetic used by the generic elimination.
trait Arith: Send + Sync {
    type E: Clone + Debug + PartialEq;
    fn scalar(&self, x: i64) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    /// `a·x − b·y`
    fn lin(&self, a: &Self::E, x: &Self::E, b: &Self::E, y: &Self::E) -> std::result::Result<Self::E, Overflow>;
    /// Multipliers `(a, b)` such that `a·t − b·p = 0`, kept small.
    fn cancel(&self, t: &Self::E, p: &Self::E) -> (Self::E, Self::E);
    fn normalize(&self, row: &mut Vec<(u32, Self::E)>);
    fn to_i64(&self, x: &Self::E) -> Option<i64>;
    /// Kernel coordinate for a pivot with leading value `lead` and entry `e` in the free column,
    /// scaled so that the free coordinate is `scale`; `scale` must be a multiple of `lead` for integers.
    fn lcm(&self, a: &Self::E, b: &Self::E) -> std::result::Result<Self::E, Overflow>;
    fn neg_mul_div(&self, e: &Self::E, scale: &Self::E, lead: &Self::E) -> std::result::Result<Self::E, Overflow>;
    fn one(&self) -> Self::E;
}

type Row<E> = Vec<(u32, E)>;

fn combine<A: Arith>(ar: &A, target: &Row<A::E>, pivot: &Row<A::E>, col: u32) -> std::result::Result<Row<A::E>, Overflow> {
    let t = &target.iter().find(|e| e.0 == col).unwrap().1;
    let p = &pivot.iter().find(|e| e.0 == col).unwrap().1;
    let (a, b) = ar.cancel(t, p);
    let zero = ar.scalar(0);
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let (c, v) = match (target.get(i), pivot.get(j)) {
            (Some(x), Some(y)) if x.0 == y.0 => {
                i += 1;
                j += 1;
                (x.0, ar.lin(&a, &x.1, &b, &y.1)?)
            }
            (Some(x), Some(y)) if x.0 < y.0 => {
                i += 1;
                (x.0, ar.lin(&a, &x.1, &b, &zero)?)
            }
            (Some(x), None) => {
                i += 1;
                (x.0, ar.lin(&a, &x.1, &b, &zero)?)
            }
            (_, Some(y)) => {
                j += 1;
                (y.0, ar.lin(&a, &zero, &b, &y.1)?)
            }
            (None, None) => unreachable!(),
        };
        if c != col && !ar.is_zero(&v) {
            out.push((c, v));
        }
    }
    ar.normalize(&mut out);
    Ok(out)
}

/// Rows with distinct leading columns.
struct Echelon<'a, A: Arith> {
    ar: &'a A,
    rows: Vec<Row<A::E>>,
    by_lead: BTreeMap<u32, usize>,
}

impl<'a, A: Arith> Echelon<'a, A> {
    fn new(ar: &'a A) -> Self {
        Self { ar, rows: Vec::new(), by_lead: BTreeMap::new() }
    }

    fn convert(&self, v: &SparseVec) -> Row<A::E> {
        let mut row: Row<A::E> = v.iter().filter(|e| e.1 != 0).map(|&(c, x)| (c, self.ar.scalar(x))).collect();
        row.retain(|e| !self.ar.is_zero(&e.1));
        self.ar.normalize(&mut row);
        row
    }

    /// Reduces the leading column repeatedly; returns the reduced row (empty if dependent).
    fn reduce(&self, mut row: Row<A::E>) -> std::result::Result<Row<A::E>, Overflow> {
        while let Some(&(lead, _)) = row.first() {
            match self.by_lead.get(&lead) {
                Some(&i) => row = combine(self.ar, &row, &self.rows[i], lead)?,
                None => break,
            }
        }
        Ok(row)
    }

    fn insert(&mut self, v: &SparseVec) -> std::result::Result<bool, Overflow> {
        let row = self.reduce(self.convert(v))?;
        self.push_reduced(row)
    }

    fn push_reduced(&mut self, row: Row<A::E>) -> std::result::Result<bool, Overflow> {
        match row.first() {
            None => Ok(false),
            Some(&(lead, _)) => {
                self.by_lead.insert(lead, self.rows.len());
                self.rows.push(row);
                Ok(true)
            }
        }
    }

    /// Clears every non-leading entry that sits in another pivot's column.
    fn back_substitute(&mut self) -> std::result::Result<(), Overflow> {
        let leads: Vec<(u32, usize)> = self.by_lead.iter().rev().map(|(&c, &i)| (c, i)).collect();
        for &(_, i) in &leads {
            loop {
                let target = self.rows[i]
                    .iter()
                    .skip(1)
                    .find(|e| self.by_lead.contains_key(&e.0))
                    .map(|e| e.0);
                match target {
                    Some(c) => {
                        let j = self.by_lead[&c];
                        self.rows[i] = combine(self.ar, &self.rows[i], &self.rows[j], c)?;
                    }
                    None => break,
                }
            }
        }
        Ok(())
    }

    fn kernel(&mut self, ncols: usize) -> std::result::Result<Vec<SparseVec>, Overflow> {
        self.back_substitute()?;
        // column → rows having an entry there
        let mut by_col: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            for e in row.iter().skip(1) {
                by_col.entry(e.0).or_default().push(i);
            }
        }
        let mut out = Vec::new();
        for free in 0..ncols as u32 {
            if self.by_lead.contains_key(&free) {
                continue;
            }
            let users = by_col.get(&free).cloned().unwrap_or_default();
            let mut scale = self.ar.one();
            for &i in &users {
                scale = self.ar.lcm(&scale, &self.rows[i][0].1)?;
            }
            let mut vec: Row<A::E> = vec![(free, scale.clone())];
            for &i in &users {
                let row = &self.rows[i];
                let e = &row.iter().find(|x| x.0 == free).unwrap().1;
                vec.push((row[0].0, self.ar.neg_mul_div(e, &scale, &row[0].1)?));
            }
            vec.sort_by_key(|e| e.0);
            self.ar.normalize(&mut vec);
            let mut sv = SparseVec::with_capacity(vec.len());
            for (c, x) in vec {
                sv.push((c, self.ar.to_i64(&x).ok_or(Overflow)?));
            }
            out.push(sv);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy)]
struct SmallInt;

impl Arith for SmallInt {
    type E = i128;
    fn scalar(&self, x: i64) -> i128 {
        x as i128
    }
    fn is_zero(&self, x: &i128) -> bool {
        *x == 0
    }
    fn lin(&self, a: &i128, x: &i128, b: &i128, y: &i128) -> std::result::Result<i128, Overflow> {
        let l = a.checked_mul(*x).ok_or(Overflow)?;
        let r = b.checked_mul(*y).ok_or(Overflow)?;
        l.checked_sub(r).ok_or(Overflow)
    }
    fn cancel(&self, t: &i128, p: &i128) -> (i128, i128) {
        let g = t.gcd(p);
        (p / g, t / g)
    }
    fn normalize(&self, row: &mut Vec<(u32, i128)>) {
        let mut g: i128 = 0;
        for e in row.iter() {
            g = g.gcd(&e.1);
            if g == 1 {
                break;
            }
        }
        let neg = row.first().is_some_and(|e| e.1 < 0);
        if g > 1 || neg {
            let g = if neg { -g } else { g };
            for e in row.iter_mut() {
                e.1 /= g;
            }
        }
    }
    fn to_i64(&self, x: &i128) -> Option<i64> {
        i64::try_from(*x).ok()
    }
    fn lcm(&self, a: &i128, b: &i128) -> std::result::Result<i128, Overflow> {
        let g = a.gcd(b);
        (a / g).checked_mul(*b).map(|x| x.abs()).ok_or(Overflow)
    }
    fn neg_mul_div(&self, e: &i128, scale: &i128, lead: &i128) -> std::result::Result<i128, Overflow> {
        (scale / lead).checked_mul(-*e).ok_or(Overflow)
    }
    fn one(&self) -> i128 {
        1
    }
}

#[derive(Debug, Clone, Copy)]
struct BigArith;

impl Arith for BigArith {
    type E = BigInt;
    fn scalar(&self, x: i64) -> BigInt {
        BigInt::from(x)
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn lin(&self, a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> std::result::Result<BigInt, Overflow> {
        Ok(a * x - b * y)
    }
    fn cancel(&self, t: &BigInt, p: &BigInt) -> (BigInt, BigInt) {
        let g = t.gcd(p);
        (p / &g, t / &g)
    }
    fn normalize(&self, row: &mut Vec<(u32, BigInt)>) {
        let mut g = BigInt::zero();
        for e in row.iter() {
            g = g.gcd(&e.1);
        }
        if row.first().is_some_and(|e| e.1.is_negative()) {
            g = -g;
        }
        if !g.is_zero() && !g.is_one() {
            for e in row.iter_mut() {
                e.1 = &e.1 / &g;
            }
        }
    }
    fn to_i64(&self, x: &BigInt) -> Option<i64> {
        x.to_i64()
    }
    fn lcm(&self, a: &BigInt, b: &BigInt) -> std::result::Result<BigInt, Overflow> {
        Ok(a.lcm(b).abs())
    }
    fn neg_mul_div(&self, e: &BigInt, scale: &BigInt, lead: &BigInt) -> std::result::Result<BigInt, Overflow> {
        Ok(-(scale / lead) * e)
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
}

#[derive(Debug, Clone, Copy)]
struct ModP(u64);

impl ModP {
    fn inv(&self, x: u64) -> u64 {
        let mut result = 1u64;
        let mut base = x % self.0;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % self.0;
            }
            base = base * base % self.0;
            e >>= 1;
        }
        result
    }
}

impl Arith for ModP {
    type E = u64;
    fn scalar(&self, x: i64) -> u64 {
        x.rem_euclid(self.0 as i64) as u64
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn lin(&self, a: &u64, x: &u64, b: &u64, y: &u64) -> std::result::Result<u64, Overflow> {
        let p = self.0;
        Ok((a * x % p + p - b * y % p) % p)
    }
    fn cancel(&self, t: &u64, p: &u64) -> (u64, u64) {
        // rows are monic, so p = 1 at the pivot column
        debug_assert_eq!(*p, 1);
        (1, *t)
    }
    fn normalize(&self, row: &mut Vec<(u32, u64)>) {
        if let Some(&(_, lead)) = row.first() {
            if lead != 1 {
                let inv = self.inv(lead);
                for e in row.iter_mut() {
                    e.1 = e.1 * inv % self.0;
                }
            }
        }
    }
    fn to_i64(&self, x: &u64) -> Option<i64> {
        // symmetric representative
        let x = *x as i64;
        let p = self.0 as i64;
        Some(if x > p / 2 { x - p } else { x })
    }
    fn lcm(&self, _a: &u64, _b: &u64) -> std::result::Result<u64, Overflow> {
        Ok(1)
    }
    fn neg_mul_div(&self, e: &u64, scale: &u64, lead: &u64) -> std::result::Result<u64, Overflow> {
        let p = self.0;
        Ok((p - e * scale % p * self.inv(*lead) % p) % p)
    }
    fn one(&self) -> u64 {
        1
    }
}

fn rank_with<A: Arith>(ar: &A, rows: &[SparseVec]) -> std::result::Result<usize, Overflow> {
    let mut ech = Echelon::new(ar);
    let mut rank = 0;
    for r in rows {
        if ech.insert(r)? {
            rank += 1;
        }
    }
    Ok(rank)
}

fn kernel_with<A: Arith>(ar: &A, rows: &[SparseVec], ncols: usize) -> std::result::Result<Vec<SparseVec>, Overflow> {
    let mut ech = Echelon::new(ar);
    for r in rows {
        ech.insert(r)?;
    }
    ech.kernel(ncols)
}

fn independent_with<A: Arith>(
    ar: &A,
    base: &[SparseVec],
    candidates: &[SparseVec],
) -> std::result::Result<Vec<usize>, Overflow> {
    let mut ech = Echelon::new(ar);
    for r in base {
        ech.insert(r)?;
    }
    let mut out = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if ech.insert(c)? {
            out.push(i);
        }
    }
    Ok(out)
}

fn solve_with<A: Arith>(
    ar: &A,
    base: &[SparseVec],
    spanning: &[SparseVec],
    target: &SparseVec,
) -> std::result::Result<bool, Overflow> {
    let mut ech = Echelon::new(ar);
    for r in base.iter().chain(spanning) {
        ech.insert(r)?;
    }
    let reduced = ech.reduce(ech.convert(target))?;
    Ok(reduced.is_empty())
}

/// Rational arithmetic by fraction-free elimination.
#[derive(Debug, Default, Clone, Copy)]
pub struct ExactBackend;

macro_rules! exact_dispatch {
    ($f:ident, $($arg:expr),*) => {
        match $f(&SmallInt, $($arg),*) {
            Ok(x) => Ok(x),
            Err(Overflow) => $f(&BigArith, $($arg),*)
                .map_err(|_| Error::Consistency("exact result does not fit in 64 bits".into())),
        }
    };
}

impl LinearBackend for ExactBackend {
    fn name(&self) -> String {
        "exact".into()
    }
    fn rank(&self, rows: &[SparseVec]) -> Result<usize> {
        exact_dispatch!(rank_with, rows)
    }
    fn kernel(&self, rows: &[SparseVec], ncols: usize) -> Result<Vec<SparseVec>> {
        exact_dispatch!(kernel_with, rows, ncols)
    }
    fn independent_modulo(&self, base: &[SparseVec], candidates: &[SparseVec]) -> Result<Vec<usize>> {
        exact_dispatch!(independent_with, base, candidates)
    }
    fn solve_modulo(&self, base: &[SparseVec], spanning: &[SparseVec], target: &SparseVec) -> Result<bool> {
        exact_dispatch!(solve_with, base, spanning, target)
    }
}

/// Arithmetic modulo a prime.
#[derive(Debug, Clone, Copy)]
pub struct PrimeBackend {
    p: u64,
}

impl PrimeBackend {
    pub fn new(p: u64) -> Result<Self> {
        let is_prime = p > 2 && p < (1 << 31) && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if !is_prime {
            return Err(Error::Parameter(format!("{p} is not an odd prime below 2^31")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl LinearBackend for PrimeBackend {
    fn name(&self) -> String {
        format!("prime:{}", self.p)
    }
    fn rank(&self, rows: &[SparseVec]) -> Result<usize> {
        Ok(rank_with(&ModP(self.p), rows).unwrap())
    }
    fn kernel(&self, rows: &[SparseVec], ncols: usize) -> Result<Vec<SparseVec>> {
        Ok(kernel_with(&ModP(self.p), rows, ncols).unwrap())
    }
    fn independent_modulo(&self, base: &[SparseVec], candidates: &[SparseVec]) -> Result<Vec<usize>> {
        Ok(independent_with(&ModP(self.p), base, candidates).unwrap())
    }
    fn solve_modulo(&self, base: &[SparseVec], spanning: &[SparseVec], target: &SparseVec) -> Result<bool> {
        Ok(solve_with(&ModP(self.p), base, spanning, target).unwrap())
    }
}

type Factory = fn(Option<&str>) -> Result<Arc<dyn LinearBackend>>;

/// Backends by name. A name may carry an argument after a colon, as in `prime:101`.
pub struct BackendRegistry {
    factories: BTreeMap<String, Factory>,
}

impl BackendRegistry {
    pub fn empty() -> Self {
        Self { factories: BTreeMap::new() }
    }

    pub fn with_defaults() -> Self {
        let mut reg = Self::empty();
        reg.register("exact", |_| Ok(Arc::new(ExactBackend)));
        reg.register("prime", |arg| {
            let p = match arg {
                None => DEFAULT_PRIME,
                Some(s) => s.parse().map_err(|_| Error::Parameter(format!("bad prime `{s}`")))?,
            };
            Ok(Arc::new(PrimeBackend::new(p)?))
        });
        reg
    }

    pub fn register(&mut self, name: &str, factory: Factory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> Vec<String> {
        self.factories.keys().cloned().collect()
    }

    pub fn create(&self, spec: &str) -> Result<Arc<dyn LinearBackend>> {
        let (name, arg) = match spec.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (spec, None),
        };
        let factory = self.factories.get(name).ok_or_else(|| Error::UnknownBackend(spec.to_string()))?;
        factory(arg)
    }
}

pub fn registry() -> &'static BackendRegistry {
    static REG: OnceLock<BackendRegistry> = OnceLock::new();
    REG.get_or_init(BackendRegistry::with_defaults)
}

pub fn backend(spec: &str) -> Result<Arc<dyn LinearBackend>> {
    registry().create(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(rows: &[&[i64]]) -> Vec<SparseVec> {
        rows.iter()
            .map(|r| r.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &x)| (c as u32, x)).collect())
            .collect()
    }

    fn backends() -> Vec<Arc<dyn LinearBackend>> {
        vec![backend("exact").unwrap(), backend("prime").unwrap(), backend("prime:101").unwrap()]
    }

    #[test]
    fn ranks() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        for b in backends() {
            assert_eq!(b.rank(&m).unwrap(), 2, "{}", b.name());
            assert_eq!(b.rank(&[]).unwrap(), 0);
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = dense(&[&[2, 0, -1, 3], &[0, 3, 1, 0], &[2, 3, 0, 3]]);
        let ex = backend("exact").unwrap();
        let k = ex.kernel(&m, 4).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let dot: i64 = row.iter().map(|&(c, x)| x * v.iter().find(|e| e.0 == c).map_or(0, |e| e.1)).sum();
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn independence_modulo_base() {
        let base = dense(&[&[1, 1, 0]]);
        let cands = dense(&[&[2, 2, 0], &[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        for b in backends() {
            assert_eq!(b.independent_modulo(&base, &cands).unwrap(), vec![1, 3]);
            assert!(b.solve_modulo(&base, &cands[1..2], &dense(&[&[1, 0, 0]])[0]).unwrap());
            assert!(!b.solve_modulo(&base, &cands[1..2], &dense(&[&[0, 0, 1]])[0]).unwrap());
        }
    }

    #[test]
    fn characteristic_shows_up() {
        let m = dense(&[&[101, 0], &[0, 1]]);
        assert_eq!(backend("exact").unwrap().rank(&m).unwrap(), 2);
        assert_eq!(backend("prime:101").unwrap().rank(&m).unwrap(), 1);
    }

    #[test]
    fn big_entries_fall_back() {
        let big = i64::MAX / 3;
        let m = dense(&[&[big, big - 1, 7], &[big - 5, big, 3], &[1, 1, 1]]);
        assert_eq!(backend("exact").unwrap().rank(&m).unwrap(), 3);
    }

    #[test]
    fn registry_rejects_unknown() {
        assert!(matches!(backend("float"), Err(Error::UnknownBackend(_))));
        assert!(backend("prime:100").is_err());
        assert_eq!(registry().names(), vec!["exact", "prime"]);
    }
}

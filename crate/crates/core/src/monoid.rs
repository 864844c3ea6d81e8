//! The essence monoid: non-decreasing maps of `{0, ..., d+1}` into itself that fix `0`
//! and `d+1`, its generators, and decomposition into at most `d³` basic functions.
//!
//! Decomposition lists are in application order: the first element is applied first, so
//! `[g1, g2, g3]` denotes `g3 ∘ g2 ∘ g1`.

use crate::error::{Error, Result};
use std::fmt;

/// Element of the essence monoid for a fixed `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidFn {
    d: usize,
    table: Vec<usize>,
}

impl MonoidFn {
    /// Validates a value table of length `d + 2`.
    pub fn new(d: usize, table: Vec<usize>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidTable("d must be at least 1".into()));
        }
        if table.len() != d + 2 {
            return Err(Error::InvalidTable(format!("expected {} values, got {}", d + 2, table.len())));
        }
        if table[0] != 0 || table[d + 1] != d + 1 {
            return Err(Error::InvalidTable("0 and d+1 must be fixed".into()));
        }
        if table.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidTable("table must be non-decreasing".into()));
        }
        Ok(MonoidFn { d, table })
    }

    /// Parses comma-separated values such as `0,2,3,3`.
    pub fn parse(d: usize, text: &str) -> Result<Self> {
        let table = text
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::InvalidTable(format!("bad value `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        MonoidFn::new(d, table)
    }

    pub fn identity(d: usize) -> Self {
        MonoidFn { d, table: (0..d + 2).collect() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn fixed_points(&self) -> usize {
        self.table.iter().enumerate().filter(|&(x, &y)| x == y).count()
    }

    /// Keeps the values above the diagonal; identity elsewhere.
    pub fn plus_part(&self) -> Self {
        let table = self.table.iter().enumerate().map(|(x, &y)| y.max(x)).collect();
        MonoidFn { d: self.d, table }
    }

    /// Keeps the values below the diagonal; identity elsewhere.
    pub fn minus_part(&self) -> Self {
        let table = self.table.iter().enumerate().map(|(x, &y)| y.min(x)).collect();
        MonoidFn { d: self.d, table }
    }

    /// Every element of the monoid for `d`, in lexicographic table order.
    pub fn all(d: usize) -> Vec<MonoidFn> {
        fn rec(d: usize, table: &mut Vec<usize>, out: &mut Vec<MonoidFn>) {
            if table.len() == d + 1 {
                let mut t = table.clone();
                t.push(d + 1);
                out.push(MonoidFn { d, table: t });
                return;
            }
            let lo = *table.last().unwrap();
            for v in lo..=d + 1 {
                table.push(v);
                rec(d, table, out);
                table.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, &mut vec![0], &mut out);
        out
    }
}

impl fmt::Display for MonoidFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.table.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `g ∘ f`, that is `x ↦ g(f(x))`.
pub fn compose(g: &MonoidFn, f: &MonoidFn) -> Result<MonoidFn> {
    if g.d != f.d {
        return Err(Error::DimensionMismatch(g.d, f.d));
    }
    Ok(MonoidFn { d: f.d, table: f.table.iter().map(|&y| g.table[y]).collect() })
}

/// Generators of the monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasicFn {
    Id,
    /// `x ↦ x + 1` for `1 <= x <= d`.
    Inc,
    /// `i ↦ i - 1`, identity elsewhere; `1 <= i <= d`.
    Dec(usize),
}

/// Derived functions used as intermediate steps of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AdvancedFn {
    /// `i ↦ i + 1`, identity elsewhere; `1 <= i <= d`.
    IncAt(usize),
    /// `[i, j] ↦ j`; `1 <= i < j <= d + 1`.
    IncRange(usize, usize),
    /// `[i, j] ↦ i`; `0 <= i < j <= d`.
    DecRange(usize, usize),
}

impl BasicFn {
    pub fn is_valid(self, d: usize) -> bool {
        match self {
            BasicFn::Id | BasicFn::Inc => true,
            BasicFn::Dec(i) => (1..=d).contains(&i),
        }
    }
}

impl AdvancedFn {
    pub fn is_valid(self, d: usize) -> bool {
        match self {
            AdvancedFn::IncAt(i) => (1..=d).contains(&i),
            AdvancedFn::IncRange(i, j) => 1 <= i && i < j && j <= d + 1,
            AdvancedFn::DecRange(i, j) => i < j && j <= d,
        }
    }
}

impl fmt::Display for BasicFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicFn::Id => write!(f, "id"),
            BasicFn::Inc => write!(f, "inc"),
            BasicFn::Dec(i) => write!(f, "dec({i})"),
        }
    }
}

/// Table of a basic function. Panics on an invalid index.
pub fn eval_basic(b: BasicFn, d: usize) -> MonoidFn {
    assert!(b.is_valid(d), "{b} is not a basic function for d = {d}");
    let table = (0..d + 2)
        .map(|x| match b {
            BasicFn::Id => x,
            BasicFn::Inc => {
                if (1..=d).contains(&x) {
                    x + 1
                } else {
                    x
                }
            }
            BasicFn::Dec(i) => {
                if x == i {
                    x - 1
                } else {
                    x
                }
            }
        })
        .collect();
    MonoidFn { d, table }
}

/// Table of an advanced function. Panics on invalid indices.
pub fn eval_advanced(a: AdvancedFn, d: usize) -> MonoidFn {
    assert!(a.is_valid(d), "{a:?} is not an advanced function for d = {d}");
    let table = (0..d + 2)
        .map(|x| match a {
            AdvancedFn::IncAt(i) => {
                if x == i {
                    x + 1
                } else {
                    x
                }
            }
            AdvancedFn::IncRange(i, j) => {
                if (i..=j).contains(&x) {
                    j
                } else {
                    x
                }
            }
            AdvancedFn::DecRange(i, j) => {
                if (i..=j).contains(&x) {
                    i
                } else {
                    x
                }
            }
        })
        .collect();
    MonoidFn { d, table }
}

/// Composition of basic functions listed in application order.
pub fn compose_sequence(d: usize, seq: &[BasicFn]) -> MonoidFn {
    seq.iter().fold(MonoidFn::identity(d), |acc, &b| compose(&eval_basic(b, d), &acc).expect("same d"))
}

/// Composition of advanced functions listed in application order.
pub fn compose_advanced_sequence(d: usize, seq: &[AdvancedFn]) -> MonoidFn {
    seq.iter().fold(MonoidFn::identity(d), |acc, &a| compose(&eval_advanced(a, d), &acc).expect("same d"))
}

/// At most `d` basic functions composing to `IncAt(i)`: shift `i+1..=d` down onto `i`,
/// apply `inc`, then shift `2..=i` back down.
pub fn decompose_inc_at(i: usize, d: usize) -> Vec<BasicFn> {
    assert!((1..=d).contains(&i), "IncAt({i}) out of range for d = {d}");
    let mut out: Vec<BasicFn> = (i + 1..=d).map(BasicFn::Dec).collect();
    out.push(BasicFn::Inc);
    out.extend((2..=i).map(BasicFn::Dec));
    out
}

/// Basic functions composing to an advanced function.
pub fn expand_advanced(a: AdvancedFn, d: usize) -> Vec<BasicFn> {
    assert!(a.is_valid(d), "{a:?} is not an advanced function for d = {d}");
    match a {
        AdvancedFn::IncAt(i) => decompose_inc_at(i, d),
        AdvancedFn::IncRange(i, j) => (i..j).flat_map(|x| decompose_inc_at(x, d)).collect(),
        AdvancedFn::DecRange(i, j) => (i + 1..=j).rev().map(BasicFn::Dec).collect(),
    }
}

/// Shape required by [`decompose_monotone`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `f(x) >= x` everywhere.
    Plus,
    /// `f(x) <= x` everywhere.
    Minus,
}

/// Decomposes a function lying on one side of the identity into at most
/// `d + 2 - fixed_points(f)` range functions, one per non-trivial fiber.
pub fn decompose_monotone(f: &MonoidFn, direction: Direction) -> Result<Vec<AdvancedFn>> {
    let fits = f.table.iter().enumerate().all(|(x, &y)| match direction {
        Direction::Plus => y >= x,
        Direction::Minus => y <= x,
    });
    if !fits {
        return Err(Error::DirectionMismatch);
    }
    // Fibers as (min, max, image), in increasing image order.
    let mut fibers: Vec<(usize, usize, usize)> = Vec::new();
    for (x, &y) in f.table.iter().enumerate() {
        match fibers.last_mut() {
            Some(last) if last.2 == y => last.1 = x,
            _ => fibers.push((x, x, y)),
        }
    }
    debug_assert!(fibers.windows(2).all(|w| w[0].2 < w[1].2), "fiber images are distinct");
    let out = match direction {
        Direction::Plus => {
            fibers.iter().rev().filter(|&&(lo, _, y)| lo != y).map(|&(lo, _, y)| AdvancedFn::IncRange(lo, y)).collect()
        }
        Direction::Minus => {
            fibers.iter().filter(|&&(_, hi, y)| hi != y).map(|&(_, hi, y)| AdvancedFn::DecRange(y, hi)).collect()
        }
    };
    Ok(out)
}

/// At most `d³` basic functions, in application order, composing to `f`. The identity
/// decomposes to `[Id]`.
pub fn decompose(f: &MonoidFn) -> Vec<BasicFn> {
    if f.is_identity() {
        return vec![BasicFn::Id];
    }
    let d = f.d;
    let mut out = Vec::new();
    // f = f⁺ ∘ f⁻, so the minus part is applied first.
    for (part, dir) in [(f.minus_part(), Direction::Minus), (f.plus_part(), Direction::Plus)] {
        for a in decompose_monotone(&part, dir).expect("parts lie on one side of the identity") {
            out.extend(expand_advanced(a, d));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(d: usize, v: &[usize]) -> MonoidFn {
        MonoidFn::new(d, v.to_vec()).unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(MonoidFn::new(2, vec![0, 2, 1, 3]).is_err());
        assert!(MonoidFn::new(2, vec![1, 2, 3, 3]).is_err());
        assert!(MonoidFn::new(2, vec![0, 1, 3]).is_err());
        assert_eq!(MonoidFn::parse(2, "0,2,3,3").unwrap(), t(2, &[0, 2, 3, 3]));
    }

    #[test]
    fn basic_tables() {
        assert_eq!(eval_basic(BasicFn::Dec(1), 2), t(2, &[0, 0, 2, 3]));
        assert_eq!(eval_basic(BasicFn::Inc, 2), t(2, &[0, 2, 3, 3]));
        assert_eq!(eval_advanced(AdvancedFn::IncRange(1, 3), 3), t(3, &[0, 3, 3, 3, 4]));
        assert_eq!(eval_advanced(AdvancedFn::DecRange(0, 2), 3), t(3, &[0, 0, 0, 3, 4]));
    }

    #[test]
    fn composition() {
        let inc = eval_basic(BasicFn::Inc, 2);
        assert_eq!(compose(&MonoidFn::identity(2), &inc).unwrap(), inc);
        assert_eq!(compose(&inc, &inc).unwrap(), t(2, &[0, 3, 3, 3]));
        assert_eq!(compose(&inc, &MonoidFn::identity(3)), Err(Error::DimensionMismatch(2, 3)));
    }

    #[test]
    fn inc_at_examples() {
        assert_eq!(decompose_inc_at(1, 1), vec![BasicFn::Inc]);
        assert_eq!(decompose_inc_at(1, 2), vec![BasicFn::Dec(2), BasicFn::Inc]);
        assert_eq!(compose_sequence(2, &decompose_inc_at(1, 2)), t(2, &[0, 2, 2, 3]));
        assert_eq!(decompose_inc_at(2, 2), vec![BasicFn::Inc, BasicFn::Dec(2)]);
        assert_eq!(compose_sequence(2, &decompose_inc_at(2, 2)), t(2, &[0, 1, 3, 3]));
    }

    #[test]
    fn monotone_examples() {
        let inc = t(2, &[0, 2, 3, 3]);
        let plus = decompose_monotone(&inc, Direction::Plus).unwrap();
        assert_eq!(plus, vec![AdvancedFn::IncRange(2, 3), AdvancedFn::IncRange(1, 2)]);
        assert_eq!(compose_advanced_sequence(2, &plus), inc);
        let dec = t(2, &[0, 0, 2, 3]);
        assert_eq!(decompose_monotone(&dec, Direction::Minus).unwrap(), vec![AdvancedFn::DecRange(0, 1)]);
        assert_eq!(decompose_monotone(&dec, Direction::Plus), Err(Error::DirectionMismatch));
    }

    #[test]
    fn full_decomposition_examples() {
        assert_eq!(decompose(&MonoidFn::identity(3)), vec![BasicFn::Id]);
        let inc = t(2, &[0, 2, 3, 3]);
        let seq = decompose(&inc);
        assert!(seq.len() <= 8);
        assert_eq!(compose_sequence(2, &seq), inc);
    }

    #[test]
    fn monoid_sizes() {
        // Non-decreasing maps of d points into d+2 values: C(2d+1, d).
        assert_eq!(MonoidFn::all(1).len(), 3);
        assert_eq!(MonoidFn::all(2).len(), 10);
        assert_eq!(MonoidFn::all(3).len(), 35);
        assert_eq!(MonoidFn::all(4).len(), 126);
    }
}

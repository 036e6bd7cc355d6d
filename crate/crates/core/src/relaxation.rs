//! Continuous relaxation of the Tits form over the ten finite cases.
//!
//! With `x = |b'|` and `y = |c'|`, `2Q(d) = ||a||^2 + ||b'||^2 + ||c'||^2 - 2xy`.
//! Relaxing the parts of `a`, `b'`, `c'` to nonnegative reals with the part
//! counts fixed by a case, the minimum is attained at equal parts inside each
//! block. Every case carries three encodings of that minimum:
//!
//! * the minimiser blocks (`count` parts summing to `total`),
//! * the expanded polynomial,
//! * the completed-square form `square / k + remainder`.
//!
//! Tests check the three against each other.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda::{min_norm_partition, DimVector};

type Rat = Rational64;

fn r(n: i64) -> Rat {
    Rat::from_integer(n)
}

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

/// Integer affine form `kx * x + ky * y + k0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lin(pub i64, pub i64, pub i64);

impl Lin {
    pub fn eval(self, x: i64, y: i64) -> i64 {
        self.0 * x + self.1 * y + self.2
    }
}

const X: Lin = Lin(1, 0, 0);
const Y: Lin = Lin(0, 1, 0);
const XY: Lin = Lin(1, 1, 0);
const fn k(c: i64) -> Lin {
    Lin(0, 0, c)
}

/// `count` equal parts summing to `total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Block {
    pub count: Lin,
    pub total: Lin,
}

const fn blk(count: Lin, total: Lin) -> Block {
    Block { count, total }
}

/// One leaf of the case analysis.
#[derive(Debug, Clone, Serialize)]
pub struct RelaxationCase {
    /// `"1"` .. `"10"`, with `"6q3"`-style ids for the split cases.
    pub id: &'static str,
    pub a: &'static [Block],
    pub b_head: &'static [Block],
    pub c_head: &'static [Block],
    /// Human-readable domain.
    pub domain: &'static str,
    /// Human-readable completed-square form.
    pub formula: &'static str,
    #[serde(skip)]
    in_domain: fn(i64, i64) -> bool,
    #[serde(skip)]
    expanded: fn(Rat, Rat) -> Rat,
    #[serde(skip)]
    square: fn(Rat, Rat) -> Rat,
    #[serde(skip)]
    remainder: fn(Rat, Rat) -> Rat,
}

impl RelaxationCase {
    /// Parenthesised domain conditions of the case.
    pub fn in_domain(&self, x: i64, y: i64) -> bool {
        (self.in_domain)(x, y)
    }

    /// Lattice points the solution table ranges over: all `x, y >= 1`, except
    /// case 8 whose `b'` is the single part 2, pinning `x = 2`.
    pub fn in_quadrant(&self, x: i64, y: i64) -> bool {
        x >= 1 && y >= 1 && (self.id != "8" || x == 2)
    }

    /// Completed-square form, without domain checks.
    pub fn two_q(&self, x: i64, y: i64) -> Rat {
        let (x, y) = (r(x), r(y));
        (self.square)(x, y) + (self.remainder)(x, y)
    }

    /// Expanded polynomial, without domain checks.
    pub fn two_q_expanded(&self, x: i64, y: i64) -> Rat {
        (self.expanded)(r(x), r(y))
    }

    /// The square-free remainder term.
    pub fn remainder(&self, x: i64, y: i64) -> Rat {
        (self.remainder)(r(x), r(y))
    }

    /// `2Q` of the real minimiser, from its blocks.
    pub fn two_q_from_blocks(&self, x: i64, y: i64) -> Option<Rat> {
        let mut acc = r(-2 * x * y);
        for b in self.a.iter().chain(self.b_head).chain(self.c_head) {
            let (count, total) = (b.count.eval(x, y), b.total.eval(x, y));
            if count == 0 {
                if total != 0 {
                    return None;
                }
                continue;
            }
            if count < 0 || total < 0 {
                return None;
            }
            acc += q(total * total, count);
        }
        Some(acc)
    }

    /// Integer vector of least Tits form with this case's part counts:
    /// each block split as evenly as possible.
    pub fn integer_minimizer(&self, x: i64, y: i64) -> Option<DimVector> {
        let split = |blocks: &[Block]| -> Option<Vec<u32>> {
            let mut out = Vec::new();
            for b in blocks {
                let (count, total) = (b.count.eval(x, y), b.total.eval(x, y));
                if count < 0 || total < 0 {
                    return None;
                }
                if count == 0 {
                    continue;
                }
                let parts = min_norm_partition(total as u64, count as u64).ok()?;
                if parts.parts().contains(&0) {
                    return None;
                }
                out.extend_from_slice(parts.parts());
            }
            Some(out)
        };
        let d = DimVector::from_heads(split(self.a)?, split(self.b_head)?, split(self.c_head)?).ok()?;
        Some(d.normalize().into_dim())
    }
}

macro_rules! case {
    ($id:expr, a: $a:expr, b: $b:expr, c: $c:expr, domain: $dt:expr, $dom:expr,
     formula: $ft:expr, expanded: $exp:expr, square: $sq:expr, remainder: $rem:expr) => {
        RelaxationCase {
            id: $id,
            a: $a,
            b_head: $b,
            c_head: $c,
            domain: $dt,
            formula: $ft,
            in_domain: $dom,
            expanded: $exp,
            square: $sq,
            remainder: $rem,
        }
    };
}

static CASES: [RelaxationCase; 13] = [
    case!("1", a: &[blk(k(2), XY)], b: &[blk(X, X)], c: &[blk(Y, Y)],
        domain: "x+y>=2, y>=x", |x, y| x + y >= 2 && y >= x,
        formula: "(x-y+1)^2/2 + (4y-1)/2",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(2) + x + y,
        square: |x, y| (x - y + r(1)) * (x - y + r(1)) / r(2),
        remainder: |_, y| (r(4) * y - r(1)) / r(2)),
    case!("2", a: &[blk(k(1), k(1)), blk(k(2), Lin(1, 1, -1))], b: &[blk(X, X)], c: &[blk(Y, Y)],
        domain: "x+y>=3, y>=x", |x, y| x + y >= 3 && y >= x,
        formula: "(x-y)^2/2 + 3/2",
        expanded: |x, y| r(-2) * x * y + (x + y - r(1)) * (x + y - r(1)) / r(2) + x + y + r(1),
        square: |x, y| (x - y) * (x - y) / r(2),
        remainder: |_, _| q(3, 2)),
    case!("3", a: &[blk(k(3), XY)], b: &[blk(k(1), X)], c: &[blk(Y, Y)],
        domain: "x+y>=6, x>=1, y>=1", |x, y| x + y >= 6 && x >= 1 && y >= 1,
        formula: "(2x-y)^2/3 + y",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(3) + x * x + y,
        square: |x, y| (r(2) * x - y) * (r(2) * x - y) / r(3),
        remainder: |_, y| y),
    case!("4", a: &[blk(k(1), k(2)), blk(k(2), Lin(1, 1, -2))], b: &[blk(k(2), X)], c: &[blk(Y, Y)],
        domain: "x+y>=6, x>=2, y>=2", |x, y| x + y >= 6 && x >= 2 && y >= 2,
        formula: "(2x-y-2)^2/4 + (y^2-8y+20)/4",
        expanded: |x, y| r(-2) * x * y + (x + y - r(2)) * (x + y - r(2)) / r(2) + x * x / r(2) + y + r(4),
        square: |x, y| (r(2) * x - y - r(2)) * (r(2) * x - y - r(2)) / r(4),
        remainder: |_, y| (y * y - r(8) * y + r(20)) / r(4)),
    case!("5", a: &[blk(k(3), XY)], b: &[blk(k(1), k(1)), blk(k(1), Lin(1, 0, -1))], c: &[blk(Y, Y)],
        domain: "x+y>=9, x>=2, y>=2", |x, y| x + y >= 9 && x >= 2 && y >= 2,
        formula: "(4x-2y-3)^2/12 + 5/4",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(3) + (x - r(1)) * (x - r(1)) + y + r(1),
        square: |x, y| (r(4) * x - r(2) * y - r(3)) * (r(4) * x - r(2) * y - r(3)) / r(12),
        remainder: |_, _| q(5, 4)),
    case!("6q3", a: &[blk(k(3), XY)], b: &[blk(k(2), X)], c: &[blk(k(2), Y)],
        domain: "q=3: x+y>=9, x>=4, y>=2", |x, y| x + y >= 9 && x >= 4 && y >= 2,
        formula: "(5x-4y)^2/30 + 3y^2/10",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(3) + x * x / r(2) + y * y / r(2),
        square: |x, y| (r(5) * x - r(4) * y) * (r(5) * x - r(4) * y) / r(30),
        remainder: |_, y| r(3) * y * y / r(10)),
    case!("6q4", a: &[blk(k(3), XY)], b: &[blk(k(2), X)], c: &[blk(k(3), Y)],
        domain: "q=4: x+y>=9, x>=4, y>=3", |x, y| x + y >= 9 && x >= 4 && y >= 3,
        formula: "(5x-4y)^2/30 + 2y^2/15",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(3) + x * x / r(2) + y * y / r(3),
        square: |x, y| (r(5) * x - r(4) * y) * (r(5) * x - r(4) * y) / r(30),
        remainder: |_, y| r(2) * y * y / r(15)),
    case!("6q5", a: &[blk(k(3), XY)], b: &[blk(k(2), X)], c: &[blk(k(4), Y)],
        domain: "q=5: x+y>=9, x>=4, y>=4", |x, y| x + y >= 9 && x >= 4 && y >= 4,
        formula: "(5x-4y)^2/30 + y^2/20",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(3) + x * x / r(2) + y * y / r(4),
        square: |x, y| (r(5) * x - r(4) * y) * (r(5) * x - r(4) * y) / r(30),
        remainder: |_, y| y * y / r(20)),
    case!("7", a: &[blk(k(1), k(1)), blk(k(3), Lin(1, 1, -1))], b: &[blk(k(1), X)], c: &[blk(Y, Y)],
        domain: "x+y>=4, x>=1, y>=1", |x, y| x + y >= 4 && x >= 1 && y >= 1,
        formula: "(4x-2y-1)^2/12 + 5/4",
        expanded: |x, y| r(-2) * x * y + (x + y - r(1)) * (x + y - r(1)) / r(3) + x * x + y + r(1),
        square: |x, y| (r(4) * x - r(2) * y - r(1)) * (r(4) * x - r(2) * y - r(1)) / r(12),
        remainder: |_, _| q(5, 4)),
    case!("8", a: &[blk(k(4), XY)], b: &[blk(k(1), X)], c: &[blk(Y, Y)],
        domain: "x=2, y>=6", |x, y| x == 2 && y >= 6,
        formula: "(y^2-8y+20)/4",
        expanded: |_, y| r(-4) * y + (r(2) + y) * (r(2) + y) / r(4) + r(4) + y,
        square: |_, _| r(0),
        remainder: |_, y| (y * y - r(8) * y + r(20)) / r(4)),
    case!("9q4", a: &[blk(k(4), XY)], b: &[blk(k(1), X)], c: &[blk(k(3), Y)],
        domain: "q=4: x+y>=8, x>=3, y>=3", |x, y| x + y >= 8 && x >= 3 && y >= 3,
        formula: "(5x-3y)^2/20 + 2y^2/15",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(4) + x * x + y * y / r(3),
        square: |x, y| (r(5) * x - r(3) * y) * (r(5) * x - r(3) * y) / r(20),
        remainder: |_, y| r(2) * y * y / r(15)),
    case!("9q5", a: &[blk(k(4), XY)], b: &[blk(k(1), X)], c: &[blk(k(4), Y)],
        domain: "q=5: x+y>=8, x>=3, y>=4", |x, y| x + y >= 8 && x >= 3 && y >= 4,
        formula: "(5x-3y)^2/20 + y^2/20",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(4) + x * x + y * y / r(4),
        square: |x, y| (r(5) * x - r(3) * y) * (r(5) * x - r(3) * y) / r(20),
        remainder: |_, y| y * y / r(20)),
    case!("10", a: &[blk(k(6), XY)], b: &[blk(k(1), X)], c: &[blk(k(2), Y)],
        domain: "x+y>=6, x>=2, y>=2", |x, y| x + y >= 6 && x >= 2 && y >= 2,
        formula: "(7x-5y)^2/42 + y^2/14",
        expanded: |x, y| r(-2) * x * y + (x + y) * (x + y) / r(6) + x * x + y * y / r(2),
        square: |x, y| (r(7) * x - r(5) * y) * (r(7) * x - r(5) * y) / r(42),
        remainder: |_, y| y * y / r(14)),
];

/// All thirteen leaves (ten cases, two of them split by `q`).
pub fn cases() -> &'static [RelaxationCase] {
    &CASES
}

pub fn case(id: &str) -> Result<&'static RelaxationCase> {
    CASES
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCase(id.to_string()))
}

/// `2Q` of the relaxed minimiser at `(x, y)`, inside the case's domain.
pub fn relaxation_2q(case: &RelaxationCase, x: i64, y: i64) -> Result<Rat> {
    if !case.in_domain(x, y) {
        return Err(Error::DomainViolation {
            case: case.id.to_string(),
            x,
            y,
        });
    }
    Ok(case.two_q(x, y))
}

/// Lattice points `(x, y)` with `0 < 2Q <= 2`, over the case's quadrant
/// and within the bounds.
pub fn relaxation_solutions(case: &RelaxationCase, x_max: i64, y_max: i64) -> BTreeSet<(i64, i64)> {
    let mut out = BTreeSet::new();
    for x in 1..=x_max {
        for y in 1..=y_max {
            if !case.in_quadrant(x, y) {
                continue;
            }
            let v = case.two_q(x, y);
            if v > r(0) && v <= r(2) {
                out.insert((x, y));
            }
        }
    }
    out
}

/// The solutions that also satisfy the case's own domain, i.e. those for
/// which some dimension vector of that case exists.
pub fn admissible_solutions(case: &RelaxationCase, x_max: i64, y_max: i64) -> BTreeSet<(i64, i64)> {
    relaxation_solutions(case, x_max, y_max)
        .into_iter()
        .filter(|&(x, y)| case.in_domain(x, y))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_examples() {
        assert_eq!(relaxation_2q(case("2").unwrap(), 1, 2).unwrap(), r(2));
        assert_eq!(relaxation_2q(case("8").unwrap(), 2, 6).unwrap(), r(2));
        assert_eq!(relaxation_2q(case("1").unwrap(), 1, 1).unwrap(), r(2));
        assert!(matches!(
            relaxation_2q(case("3").unwrap(), 1, 1),
            Err(Error::DomainViolation { .. })
        ));
        assert!(matches!(case("11"), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn three_encodings_agree() {
        for c in cases() {
            for x in 0..40 {
                for y in 0..40 {
                    if c.id == "8" && x != 2 {
                        continue;
                    }
                    let blocks = c.two_q_from_blocks(x, y);
                    if let Some(b) = blocks {
                        assert_eq!(b, c.two_q_expanded(x, y), "case {} blocks ({x},{y})", c.id);
                    }
                    assert_eq!(c.two_q(x, y), c.two_q_expanded(x, y), "case {} ({x},{y})", c.id);
                }
            }
        }
    }

    #[test]
    fn positivity() {
        for c in cases() {
            for x in 1..60 {
                for y in 1..60 {
                    if !c.in_quadrant(x, y) {
                        continue;
                    }
                    assert!(c.two_q(x, y) >= c.remainder(x, y));
                    assert!(c.remainder(x, y) > r(0), "case {} ({x},{y})", c.id);
                }
            }
        }
    }

    #[test]
    fn solution_examples() {
        let s = |id, pts: &[(i64, i64)]| {
            assert_eq!(
                relaxation_solutions(case(id).unwrap(), 50, 50),
                pts.iter().copied().collect::<BTreeSet<_>>(),
                "case {id}"
            )
        };
        s("8", &[(2, 2), (2, 3), (2, 4), (2, 5), (2, 6)]);
        s("3", &[(1, 1), (1, 2)]);
        s("1", &[(1, 1)]);
        assert_eq!(
            admissible_solutions(case("8").unwrap(), 50, 50),
            [(2, 6)].into_iter().collect()
        );
    }

    #[test]
    fn integer_minimizer_matches_blocks() {
        let d = case("6q5").unwrap().integer_minimizer(5, 6).unwrap();
        assert_eq!(d.to_text(), "4,4,3|3,2,6|2,2,1,1,5");
        let d = case("10").unwrap().integer_minimizer(4, 5).unwrap();
        assert_eq!(d.to_text(), "2,2,2,1,1,1|4,5|3,2,4");
        assert!(case("1").unwrap().integer_minimizer(0, 0).is_none());
    }
}

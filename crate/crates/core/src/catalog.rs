//! The finite-type dimension vectors with `Q = 1`.
//!
//! These are exactly the dimension vectors of rigid indecomposable joint
//! flag representations. The list is hard-coded as sporadic vectors and
//! one-parameter families, one generator per family, with `b` and `c`
//! unordered; [`semantic_q1_finite`] is the independent definition it is
//! checked against.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finiteness::{is_finite_pattern, summand_count, summands, PatternEngine};
use crate::lambda::{DimVector, NormalizedVector};

/// Generator of one family. Sporadic entries ignore `x`.
type Generator = fn(u32) -> (Vec<u32>, Vec<u32>, Vec<u32>);

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CatalogFamily {
    pub id: &'static str,
    /// Closed form `(a, b, c)` in exponent notation.
    pub formula: &'static str,
    /// Smallest admissible parameter, or `None` for a sporadic vector.
    pub min_x: Option<u32>,
    #[serde(skip)]
    generator: Generator,
}

impl CatalogFamily {
    pub fn is_sporadic(&self) -> bool {
        self.min_x.is_none()
    }

    /// The triple at parameter `x`, before normalization.
    pub fn raw(&self, x: u32) -> Result<DimVector> {
        let (a, b, c) = (self.generator)(x);
        DimVector::from_parts(a, b, c)
    }

    /// The member at parameter `x`, normalized.
    pub fn generate(&self, x: u32) -> Result<NormalizedVector> {
        if let Some(m) = self.min_x {
            if x < m {
                return Err(Error::InvalidConfig(format!(
                    "family {} needs x >= {m}, got {x}",
                    self.id
                )));
            }
        }
        Ok(self.raw(x)?.normalize())
    }

    /// Parameters to scan: just `0` for sporadics.
    fn params(&self, max_weight: u64) -> impl Iterator<Item = u32> + '_ {
        let (lo, hi) = match self.min_x {
            None => (0, 0),
            // every family has |a| >= x
            Some(m) => (m, max_weight.min(u32::MAX as u64) as u32),
        };
        (lo..=hi).take_while(move |&x| {
            self.raw(x)
                .map(|d| d.weight() <= max_weight)
                .unwrap_or(false)
        })
    }
}

fn ones(n: u32) -> Vec<u32> {
    vec![1; n as usize]
}

fn cat(parts: &[&[u32]]) -> Vec<u32> {
    parts.concat()
}

static FAMILIES: [CatalogFamily; 26] = [
    CatalogFamily { id: "S1", formula: "((1),(1),(1,0))", min_x: None,
        generator: |_| (vec![1], vec![1], vec![1, 0]) },
    CatalogFamily { id: "S2", formula: "((1^6),(2,4),(2^2,2))", min_x: None,
        generator: |_| (ones(6), vec![2, 4], vec![2, 2, 2]) },
    CatalogFamily { id: "F1", formula: "((1^{2x+1}),(x,x+1),(x,1,x))", min_x: Some(2),
        generator: |x| (ones(2 * x + 1), vec![x, x + 1], vec![x, 1, x]) },
    CatalogFamily { id: "F2", formula: "((1^{2x}),(x,x),(x-1,1,x))", min_x: Some(2),
        generator: |x| (ones(2 * x), vec![x, x], vec![x - 1, 1, x]) },
    CatalogFamily { id: "F3", formula: "((1^x),(1,x-1),(1^{x-1},1))", min_x: Some(2),
        generator: |x| (ones(x), vec![1, x - 1], cat(&[&ones(x - 1), &[1]])) },
    CatalogFamily { id: "F4", formula: "((x,x-1,1),(1^x,x),(1^x,x))", min_x: Some(2),
        generator: |x| (vec![x, x - 1, 1], cat(&[&ones(x), &[x]]), cat(&[&ones(x), &[x]])) },
    CatalogFamily { id: "F5", formula: "((x^2,1),(1^x,x+1),(1^{x+1},x))", min_x: Some(2),
        generator: |x| (vec![x, x, 1], cat(&[&ones(x), &[x + 1]]), cat(&[&ones(x + 1), &[x]])) },
    CatalogFamily { id: "S3", formula: "((2^3),(1^2,4),(1^4,2))", min_x: None,
        generator: |_| (vec![2, 2, 2], vec![1, 1, 4], vec![1, 1, 1, 1, 2]) },
    CatalogFamily { id: "S4", formula: "((2^3),(2,1,3),(1^3,3))", min_x: None,
        generator: |_| (vec![2, 2, 2], vec![2, 1, 3], vec![1, 1, 1, 3]) },
    CatalogFamily { id: "S5", formula: "((3,2^2),(2,1,4),(1^4,3))", min_x: None,
        generator: |_| (vec![3, 2, 2], vec![2, 1, 4], vec![1, 1, 1, 1, 3]) },
    CatalogFamily { id: "S6", formula: "((3^2,2),(2,1,5),(1^5,3))", min_x: None,
        generator: |_| (vec![3, 3, 2], vec![2, 1, 5], vec![1, 1, 1, 1, 1, 3]) },
    CatalogFamily { id: "S7", formula: "((3^2,2),(2^2,4),(1^4,4))", min_x: None,
        generator: |_| (vec![3, 3, 2], vec![2, 2, 4], vec![1, 1, 1, 1, 4]) },
    CatalogFamily { id: "S8", formula: "((4,3,2),(2^2,5),(1^5,4))", min_x: None,
        generator: |_| (vec![4, 3, 2], vec![2, 2, 5], vec![1, 1, 1, 1, 1, 4]) },
    CatalogFamily { id: "S9", formula: "((4^2,2),(2^2,6),(1^6,4))", min_x: None,
        generator: |_| (vec![4, 4, 2], vec![2, 2, 6], vec![1, 1, 1, 1, 1, 1, 4]) },
    CatalogFamily { id: "F6", formula: "((x^3),(x-1,1,2x),(1^{2x},x))", min_x: Some(3),
        generator: |x| (vec![x, x, x], vec![x - 1, 1, 2 * x], cat(&[&ones(2 * x), &[x]])) },
    CatalogFamily { id: "F7", formula: "((x^2,x-1),(x-1,1,2x-1),(1^{2x-1},x))", min_x: Some(4),
        generator: |x| (vec![x, x, x - 1], vec![x - 1, 1, 2 * x - 1], cat(&[&ones(2 * x - 1), &[x]])) },
    CatalogFamily { id: "F8", formula: "((x,(x-1)^2),(x-1,1,2x-2),(1^{2x-2},x))", min_x: Some(4),
        generator: |x| (vec![x, x - 1, x - 1], vec![x - 1, 1, 2 * x - 2], cat(&[&ones(2 * x - 2), &[x]])) },
    CatalogFamily { id: "F9", formula: "(((x-1)^3),(x-1,1,2x-3),(1^{2x-3},x))", min_x: Some(4),
        generator: |x| (vec![x - 1; 3], vec![x - 1, 1, 2 * x - 3], cat(&[&ones(2 * x - 3), &[x]])) },
    CatalogFamily { id: "S10", formula: "((3^3),(2^2,5),(2,1^3,4))", min_x: None,
        generator: |_| (vec![3, 3, 3], vec![2, 2, 5], vec![2, 1, 1, 1, 4]) },
    CatalogFamily { id: "F10", formula: "(((x-1)^3,1),(x,2x-2),(1^{2x-2},x))", min_x: Some(2),
        generator: |x| (vec![x - 1, x - 1, x - 1, 1], vec![x, 2 * x - 2], cat(&[&ones(2 * x - 2), &[x]])) },
    CatalogFamily { id: "F11", formula: "((x,(x-1)^2,1),(x,2x-1),(1^{2x-1},x))", min_x: Some(2),
        generator: |x| (vec![x, x - 1, x - 1, 1], vec![x, 2 * x - 1], cat(&[&ones(2 * x - 1), &[x]])) },
    CatalogFamily { id: "F12", formula: "((x^2,x-1,1),(x,2x),(1^{2x},x))", min_x: Some(2),
        generator: |x| (vec![x, x, x - 1, 1], vec![x, 2 * x], cat(&[&ones(2 * x), &[x]])) },
    CatalogFamily { id: "F13", formula: "((x^3,1),(x,2x+1),(1^{2x+1},x))", min_x: Some(2),
        generator: |x| (vec![x, x, x, 1], vec![x, 2 * x + 1], cat(&[&ones(2 * x + 1), &[x]])) },
    CatalogFamily { id: "S11", formula: "((2^4),(2,6),(1^6,2))", min_x: None,
        generator: |_| (vec![2, 2, 2, 2], vec![2, 6], cat(&[&ones(6), &[2]])) },
    CatalogFamily { id: "S12", formula: "((2^4),(3,5),(2,1^3,3))", min_x: None,
        generator: |_| (vec![2, 2, 2, 2], vec![3, 5], vec![2, 1, 1, 1, 3]) },
    CatalogFamily { id: "S13", formula: "((2,1^5),(3,4),(2^2,3))", min_x: None,
        generator: |_| (cat(&[&[2], &ones(5)]), vec![3, 4], vec![2, 2, 3]) },
];

/// Every family, sporadic entries included.
pub fn families() -> &'static [CatalogFamily] {
    &FAMILIES
}

/// Which family (and parameter) produced a catalog vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogTag {
    pub family: &'static str,
    pub formula: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u32>,
    /// True when the vector is the `b <-> c` swap of the closed form.
    pub mirrored: bool,
}

/// Every catalog vector with `|a| <= max_weight`, both `b`/`c` orders,
/// each once, tagged with the first family producing it.
pub fn catalog_enumerate(max_weight: u64) -> BTreeMap<NormalizedVector, CatalogTag> {
    let mut out = BTreeMap::new();
    for fam in families() {
        for x in fam.params(max_weight) {
            let v = fam.generate(x).expect("catalog families are valid");
            let param = fam.min_x.map(|_| x);
            let mirror = v.mirror();
            out.entry(v).or_insert(CatalogTag {
                family: fam.id,
                formula: fam.formula,
                x: param,
                mirrored: false,
            });
            out.entry(mirror).or_insert(CatalogTag {
                family: fam.id,
                formula: fam.formula,
                x: param,
                mirrored: true,
            });
        }
    }
    out
}

/// Looks `d` (or its mirror) up among the families.
pub fn catalog_member(d: &NormalizedVector) -> Option<CatalogTag> {
    let mirror = d.mirror();
    for fam in families() {
        for x in fam.params(d.weight()) {
            let v = fam.generate(x).expect("catalog families are valid");
            let mirrored = if &v == d {
                false
            } else if v == mirror {
                true
            } else {
                continue;
            };
            return Some(CatalogTag {
                family: fam.id,
                formula: fam.formula,
                x: fam.min_x.map(|_| x),
                mirrored,
            });
        }
    }
    None
}

/// `Q(d) = 1` and `d` of finite type: the defining property of the list.
pub fn semantic_q1_finite(d: &DimVector) -> bool {
    d.tits_form() == 1 && is_finite_pattern(d).finite
}

/// Same predicate with a caller-supplied pattern engine.
pub fn semantic_q1_finite_with(engine: &PatternEngine, d: &DimVector) -> bool {
    d.tits_form() == 1 && engine.is_finite(d)
}

/// Every summand of `d` that is itself a finite-type `Q = 1` vector, in
/// summand-stream order. These are the pieces orbits decompose into.
pub fn q1_summand_pool(d: &DimVector, max_summands: u128) -> Result<Vec<DimVector>> {
    if summand_count(d) > max_summands {
        return Err(Error::BudgetExceeded {
            what: "dominated vector count",
            limit: max_summands.min(u64::MAX as u128) as u64,
        });
    }
    Ok(summands(d).filter(semantic_q1_finite).collect())
}

//! Pairs of non-isomorphic graphs with equal `k`-decks, and one pair with many
//! common cards, built from parameters and checked exactly.

use crate::deck::{compute_deck, deck_common, Deck};
use crate::error::{Error, Result};
use crate::graph::{basic_family, is_isomorphic, Family, Graph, MAX_VERTICES};
use crate::subsets::binomial;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// `C_{q+r}` vs `C_q + C_r`; needs `q, r >= k + 1`.
    CycleSplit { k: usize, q: usize, r: usize },
    /// `P_{q+r}` vs `C_q + P_r`; needs `q >= k + 1`, `r >= k - 1`.
    CyclePath { k: usize, q: usize, r: usize },
    /// `P_{q-1} + P_r` vs `P_q + P_{r-1}`; needs `q, r >= k`.
    PathShift { k: usize, q: usize, r: usize },
    /// Two graphs of maximum degree 2 given by component lists: `m > 0` is
    /// `P_m`, `m < 0` is `C_{|m|}`. Needs equal orders and edge counts, cycles
    /// of at least `k + 1` vertices and paths of at least `k - 1`.
    MaxDeg2General { k: usize, first: Vec<i64>, second: Vec<i64> },
    /// `S_{k-1,k-1,1}` vs `S_{k,k-2,1}`.
    SpiderPair { k: usize },
    /// `C_t + P_1` vs `S_{a,b,c}` with `t = a + b + c >= 4`, at `k = 3`.
    CycleVsSpider { a: usize, b: usize, c: usize },
    /// Star forests `Σ C(k,2i) K_{1,k-2i}` vs `Σ C(k,2i+1) K_{1,k-1-2i}`.
    ManvelStars { k: usize },
    /// `K_{7,4,3}` vs `K_{6,6,1,1}` at `k = 3`.
    ErpartPair,
    /// `P_{2ℓ}` vs `C_{ℓ+1} + P_{ℓ-1}` at `k = ℓ`.
    PathVsCyclePath { ell: usize },
    /// `K_{t,t}` vs `K_{t+1,t-1}`: at least `t + 1` common `(2t-1)`-cards.
    MyrvoldCommon { t: usize },
}

pub const FAMILY_NAMES: [&str; 10] = [
    "cycle_split",
    "cycle_path",
    "path_shift",
    "maxdeg2_general",
    "spider_pair",
    "cycle_vs_spider",
    "manvel_stars",
    "erpart_pair",
    "path_vs_cycle_path",
    "myrvold_common",
];

fn unsigned(name: &str, params: &[i64], want: usize) -> Result<Vec<usize>> {
    if params.len() != want {
        return Err(Error::InvalidParams(format!(
            "{name} takes {want} parameters, got {}",
            params.len()
        )));
    }
    params
        .iter()
        .map(|&p| usize::try_from(p).map_err(|_| Error::InvalidParams(format!("{name}: negative parameter {p}"))))
        .collect()
}

fn bound(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(what()))
    }
}

fn fam(kind: Family, params: &[usize]) -> Result<Graph> {
    basic_family(kind, params)
}

fn union(parts: Vec<Graph>) -> Result<Graph> {
    let mut it = parts.into_iter();
    let mut g = it.next().ok_or(Error::EmptyVertexSet)?;
    for p in it {
        g = g.disjoint_union(&p)?;
    }
    Ok(g)
}

fn linear_forest(components: &[i64]) -> Result<Graph> {
    let parts = components
        .iter()
        .map(|&m| match m {
            0 => Err(Error::InvalidParams("component length 0".into())),
            m if m > 0 => fam(Family::Path, &[m as usize]),
            m => fam(Family::Cycle, &[m.unsigned_abs() as usize]),
        })
        .collect::<Result<Vec<_>>>()?;
    union(parts)
}

fn star_forest(counts: impl Iterator<Item = (u128, usize)>) -> Result<Graph> {
    let mut stars = Vec::new();
    for (count, leaves) in counts {
        stars.extend(std::iter::repeat_n(leaves, count as usize));
    }
    let n: usize = stars.iter().map(|s| s + 1).sum();
    if n > MAX_VERTICES {
        return Err(Error::VertexCount(n));
    }
    fam(Family::StarForest, &stars)
}

impl FamilySpec {
    /// Reads a family name and its integer parameters. Only `maxdeg2_general`
    /// takes signed values: `[k, first..., 0, second...]`.
    pub fn parse(name: &str, params: &[i64]) -> Result<Self> {
        Ok(match name {
            "cycle_split" | "cycle_path" | "path_shift" => {
                let p = unsigned(name, params, 3)?;
                let (k, q, r) = (p[0], p[1], p[2]);
                match name {
                    "cycle_split" => FamilySpec::CycleSplit { k, q, r },
                    "cycle_path" => FamilySpec::CyclePath { k, q, r },
                    _ => FamilySpec::PathShift { k, q, r },
                }
            }
            "maxdeg2_general" => {
                let (&k, rest) = params
                    .split_first()
                    .ok_or_else(|| Error::InvalidParams("maxdeg2_general needs k first".into()))?;
                let k = usize::try_from(k).map_err(|_| Error::InvalidParams(format!("negative k {k}")))?;
                let sep = rest
                    .iter()
                    .position(|&x| x == 0)
                    .ok_or_else(|| Error::InvalidParams("maxdeg2_general needs a 0 between the graphs".into()))?;
                FamilySpec::MaxDeg2General {
                    k,
                    first: rest[..sep].to_vec(),
                    second: rest[sep + 1..].to_vec(),
                }
            }
            "spider_pair" => FamilySpec::SpiderPair { k: unsigned(name, params, 1)?[0] },
            "cycle_vs_spider" => {
                let p = unsigned(name, params, 3)?;
                FamilySpec::CycleVsSpider { a: p[0], b: p[1], c: p[2] }
            }
            "manvel_stars" => FamilySpec::ManvelStars { k: unsigned(name, params, 1)?[0] },
            "erpart_pair" => {
                unsigned(name, params, 0)?;
                FamilySpec::ErpartPair
            }
            "path_vs_cycle_path" => FamilySpec::PathVsCyclePath { ell: unsigned(name, params, 1)?[0] },
            "myrvold_common" => FamilySpec::MyrvoldCommon { t: unsigned(name, params, 1)?[0] },
            other => {
                return Err(Error::InvalidParams(format!(
                    "unknown family {other:?}; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::CycleSplit { .. } => "cycle_split",
            FamilySpec::CyclePath { .. } => "cycle_path",
            FamilySpec::PathShift { .. } => "path_shift",
            FamilySpec::MaxDeg2General { .. } => "maxdeg2_general",
            FamilySpec::SpiderPair { .. } => "spider_pair",
            FamilySpec::CycleVsSpider { .. } => "cycle_vs_spider",
            FamilySpec::ManvelStars { .. } => "manvel_stars",
            FamilySpec::ErpartPair => "erpart_pair",
            FamilySpec::PathVsCyclePath { .. } => "path_vs_cycle_path",
            FamilySpec::MyrvoldCommon { .. } => "myrvold_common",
        }
    }

    /// Card size the family's claim is about.
    pub fn k(&self) -> usize {
        match *self {
            FamilySpec::CycleSplit { k, .. }
            | FamilySpec::CyclePath { k, .. }
            | FamilySpec::PathShift { k, .. }
            | FamilySpec::MaxDeg2General { k, .. }
            | FamilySpec::SpiderPair { k }
            | FamilySpec::ManvelStars { k } => k,
            FamilySpec::CycleVsSpider { .. } | FamilySpec::ErpartPair => 3,
            FamilySpec::PathVsCyclePath { ell } => ell,
            FamilySpec::MyrvoldCommon { t } => (2 * t).saturating_sub(1),
        }
    }

    /// The bounds under which the family's claim is stated.
    pub fn check_bounds(&self) -> Result<()> {
        let k = self.k();
        match self {
            FamilySpec::CycleSplit { q, r, .. } => bound(k >= 1 && *q >= k + 1 && *r >= k + 1, || {
                format!("cycle_split needs q, r >= k + 1 = {}", k + 1)
            }),
            FamilySpec::CyclePath { q, r, .. } => bound(k >= 1 && *q >= k + 1 && *r + 1 >= k, || {
                format!("cycle_path needs q >= k + 1 = {} and r >= k - 1", k + 1)
            }),
            FamilySpec::PathShift { q, r, .. } => {
                bound(k >= 1 && *q >= k && *r >= k, || format!("path_shift needs q, r >= k = {k}"))
            }
            FamilySpec::MaxDeg2General { first, second, .. } => {
                bound(k >= 1, || "maxdeg2_general needs k >= 1".into())?;
                for &m in first.iter().chain(second) {
                    let len = m.unsigned_abs() as usize;
                    if m < 0 {
                        bound(len > k, || format!("cycle C_{len} needs at least k + 1 = {} vertices", k + 1))?;
                    } else {
                        bound(len + 1 >= k, || format!("path P_{len} needs at least k - 1 vertices"))?;
                    }
                }
                let order = |c: &[i64]| c.iter().map(|m| m.unsigned_abs()).sum::<u64>();
                let paths = |c: &[i64]| c.iter().filter(|&&m| m > 0).count();
                bound(order(first) == order(second), || "the two graphs need equal orders".into())?;
                // edges = vertices - paths
                bound(paths(first) == paths(second), || "the two graphs need equal edge counts".into())
            }
            FamilySpec::SpiderPair { .. } => bound(k >= 3, || "spider_pair needs k >= 3".into()),
            FamilySpec::CycleVsSpider { a, b, c } => bound(*a >= 1 && *b >= 1 && *c >= 1 && a + b + c >= 4, || {
                "cycle_vs_spider needs positive a, b, c with a + b + c >= 4".into()
            }),
            FamilySpec::ManvelStars { .. } => bound((2..=5).contains(&k), || {
                format!("manvel_stars needs 2 <= k <= 5 (order (k+2)2^(k-2) <= {MAX_VERTICES}), got {k}")
            }),
            FamilySpec::ErpartPair => Ok(()),
            FamilySpec::PathVsCyclePath { ell } => {
                bound(*ell >= 2, || "path_vs_cycle_path needs ℓ >= 2".into())
            }
            FamilySpec::MyrvoldCommon { t } => bound(*t >= 2, || "myrvold_common needs t >= 2".into()),
        }
    }

    /// The two graphs, without checking the claim's bounds.
    pub fn build(&self) -> Result<(Graph, Graph)> {
        Ok(match self {
            FamilySpec::CycleSplit { q, r, .. } => (
                fam(Family::Cycle, &[q + r])?,
                union(vec![fam(Family::Cycle, &[*q])?, fam(Family::Cycle, &[*r])?])?,
            ),
            FamilySpec::CyclePath { q, r, .. } => (
                fam(Family::Path, &[q + r])?,
                union(vec![fam(Family::Cycle, &[*q])?, fam(Family::Path, &[*r])?])?,
            ),
            FamilySpec::PathShift { q, r, .. } => {
                if *q < 2 || *r < 2 {
                    return Err(Error::InvalidParams("path_shift needs q, r >= 2".into()));
                }
                (
                    union(vec![fam(Family::Path, &[q - 1])?, fam(Family::Path, &[*r])?])?,
                    union(vec![fam(Family::Path, &[*q])?, fam(Family::Path, &[r - 1])?])?,
                )
            }
            FamilySpec::MaxDeg2General { first, second, .. } => (linear_forest(first)?, linear_forest(second)?),
            FamilySpec::SpiderPair { k } => {
                if *k < 3 {
                    return Err(Error::InvalidParams("spider legs must be positive, so k >= 3".into()));
                }
                (fam(Family::Spider, &[k - 1, k - 1, 1])?, fam(Family::Spider, &[*k, k - 2, 1])?)
            }
            FamilySpec::CycleVsSpider { a, b, c } => (
                union(vec![fam(Family::Cycle, &[a + b + c])?, fam(Family::Path, &[1])?])?,
                fam(Family::Spider, &[*a, *b, *c])?,
            ),
            FamilySpec::ManvelStars { k } => {
                let k = *k;
                if k < 2 {
                    return Err(Error::InvalidParams("manvel_stars needs k >= 2".into()));
                }
                let kk = k as u64;
                (
                    star_forest((0..=k / 2).map(|i| (binomial(kk, 2 * i as u64), k - 2 * i)))?,
                    star_forest((0..=(k - 1) / 2).map(|i| (binomial(kk, 2 * i as u64 + 1), k - 1 - 2 * i)))?,
                )
            }
            FamilySpec::ErpartPair => (
                fam(Family::CompleteMultipartite, &[7, 4, 3])?,
                fam(Family::CompleteMultipartite, &[6, 6, 1, 1])?,
            ),
            FamilySpec::PathVsCyclePath { ell } => {
                if *ell < 2 {
                    return Err(Error::InvalidParams("path_vs_cycle_path needs ℓ >= 2".into()));
                }
                (
                    fam(Family::Path, &[2 * ell])?,
                    union(vec![fam(Family::Cycle, &[ell + 1])?, fam(Family::Path, &[ell - 1])?])?,
                )
            }
            FamilySpec::MyrvoldCommon { t } => {
                if *t < 2 {
                    return Err(Error::InvalidParams("myrvold_common needs t >= 2".into()));
                }
                (
                    fam(Family::CompleteMultipartite, &[*t, *t])?,
                    fam(Family::CompleteMultipartite, &[t + 1, t - 1])?,
                )
            }
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::CycleSplit { k, q, r } | FamilySpec::CyclePath { k, q, r } | FamilySpec::PathShift { k, q, r } => {
                write!(f, "{}(k={k}, q={q}, r={r})", self.name())
            }
            FamilySpec::MaxDeg2General { k, first, second } => {
                write!(f, "maxdeg2_general(k={k}, {first:?} vs {second:?})")
            }
            FamilySpec::SpiderPair { k } | FamilySpec::ManvelStars { k } => write!(f, "{}(k={k})", self.name()),
            FamilySpec::CycleVsSpider { a, b, c } => write!(f, "cycle_vs_spider(a={a}, b={b}, c={c})"),
            FamilySpec::ErpartPair => write!(f, "erpart_pair"),
            FamilySpec::PathVsCyclePath { ell } => write!(f, "path_vs_cycle_path(ℓ={ell})"),
            FamilySpec::MyrvoldCommon { t } => write!(f, "myrvold_common(t={t})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub g: Graph,
    pub h: Graph,
    pub k: usize,
}

/// The family's two graphs, refusing parameters outside its stated bounds.
pub fn same_deck_pair(spec: &FamilySpec) -> Result<Construction> {
    spec.check_bounds()?;
    let (g, h) = spec.build()?;
    Ok(Construction { g, h, k: spec.k() })
}

#[derive(Clone, Debug)]
pub struct Verification {
    pub holds: bool,
    pub k: usize,
    pub diagnostic: String,
    /// The first graph's deck, or the common cards for `myrvold_common`.
    pub deck: Option<Deck>,
}

/// Checks the family's claim exactly. Parameters outside the stated bounds are
/// accepted, so the claim can be tested where it is not promised.
pub fn verify_construction(spec: &FamilySpec) -> Verification {
    let k = spec.k();
    let fail = |diagnostic: String| Verification { holds: false, k, diagnostic, deck: None };
    let (g, h) = match spec.build() {
        Ok(pair) => pair,
        Err(e) => return fail(format!("cannot build {spec}: {e}")),
    };
    if k == 0 || k > g.order() || k > h.order() {
        return fail(format!("card size {k} does not fit graphs on {} and {} vertices", g.order(), h.order()));
    }
    let decks = compute_deck(&g, k).and_then(|a| Ok((a, compute_deck(&h, k)?)));
    let (dg, dh) = match decks {
        Ok(pair) => pair,
        Err(e) => return fail(format!("deck computation failed: {e}")),
    };
    if let FamilySpec::MyrvoldCommon { t } = spec {
        let common = deck_common(&dg, &dh).expect("same n and k");
        let total = common.total();
        let holds = total >= *t as u128 + 1;
        return Verification {
            holds,
            k,
            diagnostic: format!("{total} common {k}-cards, claim needs at least {}", t + 1),
            deck: Some(common),
        };
    }
    let iso = is_isomorphic(&g, &h);
    let differing = dg
        .cards()
        .keys()
        .chain(dh.cards().keys())
        .filter(|c| dg.count(c) != dh.count(c))
        .count();
    let (holds, diagnostic) = match (differing, iso) {
        (0, false) => (true, format!("equal {k}-decks of {} cards, graphs non-isomorphic", dg.total())),
        (0, true) => (false, "the two graphs are isomorphic".to_string()),
        (d, _) => (false, format!("{k}-decks differ in {d} card classes")),
    };
    Verification { holds, k, diagnostic, deck: Some(dg) }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(kind: Family, p: &[usize]) -> Graph {
        basic_family(kind, p).unwrap()
    }

    #[test]
    fn spider_pair_has_2k_vertices() {
        let c = same_deck_pair(&FamilySpec::SpiderPair { k: 4 }).unwrap();
        assert_eq!(c.k, 4);
        assert_eq!((c.g.order(), c.h.order()), (8, 8));
        assert!(is_isomorphic(&c.g, &g(Family::Spider, &[3, 3, 1])));
        assert!(is_isomorphic(&c.h, &g(Family::Spider, &[4, 2, 1])));
        assert!(same_deck_pair(&FamilySpec::SpiderPair { k: 2 }).is_err());
    }

    #[test]
    fn path_shift_example() {
        let c = same_deck_pair(&FamilySpec::PathShift { k: 3, q: 3, r: 4 }).unwrap();
        let p2p4 = g(Family::Path, &[2]).disjoint_union(&g(Family::Path, &[4])).unwrap();
        assert!(is_isomorphic(&c.g, &p2p4));
        assert!(is_isomorphic(&c.h, &g(Family::Path, &[3]).times(2).unwrap()));
        assert_eq!(c.k, 3);
    }

    #[test]
    fn manvel_stars_order_and_degrees() {
        let c = same_deck_pair(&FamilySpec::ManvelStars { k: 3 }).unwrap();
        assert_eq!((c.g.order(), c.h.order()), (10, 10));
        assert_eq!((c.g.max_degree(), c.h.max_degree()), (3, 2));
        let want_g = g(Family::StarForest, &[3, 1, 1, 1]);
        let want_h = g(Family::StarForest, &[2, 2, 2, 0]);
        assert!(is_isomorphic(&c.g, &want_g) && is_isomorphic(&c.h, &want_h));
        for k in 2..=5usize {
            let c = same_deck_pair(&FamilySpec::ManvelStars { k }).unwrap();
            assert_eq!(c.g.order(), (k + 2) << (k - 2));
            assert_eq!(c.h.order(), c.g.order());
            assert_eq!((c.g.max_degree(), c.h.max_degree()), (k, k - 1));
        }
        assert!(same_deck_pair(&FamilySpec::ManvelStars { k: 6 }).is_err());
    }

    #[test]
    fn erpart_tally() {
        let v = verify_construction(&FamilySpec::ErpartPair);
        assert!(v.holds, "{}", v.diagnostic);
        let d = v.deck.unwrap();
        assert_eq!(d.count_of(&g(Family::Complete, &[3])), 84);
        assert_eq!(d.count_of(&g(Family::Path, &[3])), 240);
        assert_eq!(d.count_of(&Graph::empty(3).unwrap()), 40);
        assert_eq!(d.cards().len(), 3);
    }

    #[test]
    fn claims_hold_inside_bounds_and_can_fail_outside() {
        assert!(verify_construction(&FamilySpec::CycleSplit { k: 3, q: 4, r: 4 }).holds);
        let v = verify_construction(&FamilySpec::PathShift { k: 4, q: 3, r: 4 });
        assert!(!v.holds);
        assert!(v.diagnostic.contains("differ"));
        assert!(same_deck_pair(&FamilySpec::PathShift { k: 4, q: 3, r: 4 }).is_err());
    }

    #[test]
    fn myrvold_common_cards() {
        for t in 2..=6 {
            let v = verify_construction(&FamilySpec::MyrvoldCommon { t });
            assert!(v.holds, "{}", v.diagnostic);
            assert_eq!(v.deck.unwrap().total(), t as u128 + 1);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(
            FamilySpec::parse("maxdeg2_general", &[3, -8, 0, -4, -4]).unwrap(),
            FamilySpec::MaxDeg2General { k: 3, first: vec![-8], second: vec![-4, -4] }
        );
        assert_eq!(FamilySpec::parse("erpart_pair", &[]).unwrap(), FamilySpec::ErpartPair);
        assert!(FamilySpec::parse("cycle_split", &[3, 4]).is_err());
        assert!(FamilySpec::parse("cycle_split", &[3, -4, 4]).is_err());
        assert!(FamilySpec::parse("nope", &[]).is_err());
        assert!(FamilySpec::parse("maxdeg2_general", &[3, 5, 5]).is_err());
        for name in FAMILY_NAMES {
            assert!(!matches!(FamilySpec::parse(name, &[]), Err(Error::InvalidParams(ref m)) if m.starts_with("unknown")));
        }
    }

    #[test]
    fn maxdeg2_bounds() {
        let ok = FamilySpec::parse("maxdeg2_general", &[3, -5, 3, 0, 8]).unwrap();
        assert!(same_deck_pair(&ok).is_ok());
        assert!(verify_construction(&ok).holds);
        // unequal edge counts
        let bad = FamilySpec::parse("maxdeg2_general", &[3, -8, 0, 4, 4]).unwrap();
        assert!(same_deck_pair(&bad).is_err());
        // a short cycle
        let short = FamilySpec::parse("maxdeg2_general", &[4, -4, -4, 0, -8]).unwrap();
        assert!(same_deck_pair(&short).is_err());
        assert!(!verify_construction(&short).holds);
    }
}

//! Grouping all graphs of one order by their k-deck.
//!
//! The enumeration tree is cut at a fixed order into work units; each unit is
//! the subtree below one graph of that order. A unit yields `(graph6,
//! fingerprint)` for every graph in it. Units run on the current rayon pool
//! and, with a checkpoint directory, each finished unit is appended as one
//! JSON line so an interrupted run can skip it later. Fingerprint collisions
//! are resolved by comparing full decks.

use super::enumerate::{level, split_level, walk_subtree, EnumOptions, ENUMERATION_LIMIT};
use crate::deck::{class_counts, compute_deck, fingerprint_counts};
use crate::error::{Error, Result};
use crate::graph::{parse_graph6, Graph};
use crate::pattern::TABLE_MAX_ORDER;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Directory for the append-only unit log.
    pub checkpoint_dir: Option<PathBuf>,
    /// Reuse finished units from an existing log instead of starting over.
    pub resume: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub k: usize,
    /// Same-deck classes of size at least two; graph6 strings in canonical
    /// labeling, each class sorted, classes sorted by first member.
    pub classes: Vec<Vec<String>>,
    pub graphs_enumerated: u64,
    pub elapsed: f64,
    pub units: usize,
    pub units_resumed: usize,
}

impl SearchReport {
    pub fn class_graphs(&self) -> Vec<Vec<Graph>> {
        self.classes
            .iter()
            .map(|c| c.iter().map(|s| parse_graph6(s).expect("report holds valid graph6")).collect())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct UnitRecord {
    n: usize,
    k: usize,
    unit: usize,
    root: String,
    graphs: Vec<(String, String)>,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn fingerprint(g: &Graph, k: usize) -> [u8; 16] {
    if k <= TABLE_MAX_ORDER {
        fingerprint_counts(g.order(), k, &class_counts(g, k))
    } else {
        compute_deck(g, k).expect("k checked").fingerprint()
    }
}

fn run_unit(root: &Graph, n: usize, k: usize) -> Vec<(String, String)> {
    let mut out = Vec::new();
    walk_subtree(root, n, EnumOptions::default(), &mut |g| {
        out.push((g.graph6(), hex(&fingerprint(g, k))));
    });
    out
}

pub fn checkpoint_path(dir: &Path, n: usize, k: usize) -> PathBuf {
    dir.join(format!("same_deck_n{n}_k{k}.jsonl"))
}

/// Finished units from a log. A final line without its newline is an
/// interrupted write and is ignored.
fn load_checkpoint(path: &Path, n: usize, k: usize, roots: &[String]) -> Result<BTreeMap<usize, Vec<(String, String)>>> {
    let mut done = BTreeMap::new();
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(e.into()),
    };
    let complete = bytes.ends_with(b"\n");
    let text = String::from_utf8_lossy(&bytes);
    let lines: Vec<&str> = text.lines().collect();
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: UnitRecord = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(_) if i + 1 == lines.len() && !complete => break,
            Err(e) => return Err(Error::Checkpoint(format!("{}: line {}: {e}", path.display(), i + 1))),
        };
        if record.n != n || record.k != k {
            return Err(Error::Checkpoint(format!(
                "{}: record for (n, k) = ({}, {})",
                path.display(),
                record.n,
                record.k
            )));
        }
        if roots.get(record.unit) != Some(&record.root) {
            return Err(Error::Checkpoint(format!(
                "{}: unit {} does not match this enumeration",
                path.display(),
                record.unit
            )));
        }
        done.insert(record.unit, record.graphs);
    }
    Ok(done)
}

/// All classes of `n`-vertex graphs sharing a `k`-deck.
pub fn same_deck_classes(n: usize, k: usize, opts: &SearchOptions) -> Result<SearchReport> {
    if n == 0 || n > ENUMERATION_LIMIT {
        return Err(Error::CostGuard {
            what: "same_deck_classes",
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    if k == 0 || k > n {
        return Err(Error::CardSize { k, n });
    }
    let start = Instant::now();
    let units = level(split_level(n), EnumOptions::default());
    let roots: Vec<String> = units.iter().map(|g| g.graph6()).collect();

    let mut done = BTreeMap::new();
    let mut writer = None;
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir)?;
        let path = checkpoint_path(dir, n, k);
        if opts.resume {
            done = load_checkpoint(&path, n, k, &roots)?;
            // drop a torn final line before appending
            let kept: String = done
                .iter()
                .map(|(&unit, graphs)| {
                    let rec = UnitRecord { n, k, unit, root: roots[unit].clone(), graphs: graphs.clone() };
                    serde_json::to_string(&rec).expect("record serializes") + "\n"
                })
                .collect();
            fs::write(&path, kept)?;
        } else {
            File::create(&path)?;
        }
        writer = Some(Mutex::new(OpenOptions::new().append(true).open(&path)?));
    }
    let units_resumed = done.len();

    let pending: Vec<usize> = (0..units.len()).filter(|u| !done.contains_key(u)).collect();
    let fresh: Vec<(usize, Vec<(String, String)>)> = pending
        .par_iter()
        .map(|&u| -> Result<(usize, Vec<(String, String)>)> {
            let graphs = run_unit(&units[u], n, k);
            if let Some(w) = &writer {
                let rec = UnitRecord { n, k, unit: u, root: roots[u].clone(), graphs };
                let line = serde_json::to_string(&rec).expect("record serializes") + "\n";
                let mut f = w.lock().expect("writer lock");
                f.write_all(line.as_bytes())?;
                f.flush()?;
                return Ok((u, rec.graphs));
            }
            Ok((u, graphs))
        })
        .collect::<Result<_>>()?;
    done.extend(fresh);

    let mut all: Vec<(String, String)> = done.into_values().flatten().collect();
    let graphs_enumerated = all.len() as u64;
    all.sort_by(|a, b| (&a.1, &a.0).cmp(&(&b.1, &b.0)));

    let mut classes = Vec::new();
    for group in all.chunk_by(|a, b| a.1 == b.1) {
        if group.len() < 2 {
            continue;
        }
        // exact confirmation: split the bucket by full deck
        let mut by_deck: Vec<(crate::deck::Deck, Vec<String>)> = Vec::new();
        for (g6, _) in group {
            let g = parse_graph6(g6)?;
            let d = compute_deck(&g, k)?;
            match by_deck.iter_mut().find(|(e, _)| *e == d) {
                Some((_, members)) => members.push(g6.clone()),
                None => by_deck.push((d, vec![g6.clone()])),
            }
        }
        for (_, mut members) in by_deck {
            if members.len() >= 2 {
                members.sort();
                classes.push(members);
            }
        }
    }
    classes.sort();
    Ok(SearchReport {
        n,
        k,
        classes,
        graphs_enumerated,
        elapsed: start.elapsed().as_secs_f64(),
        units: units.len(),
        units_resumed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deck::decks_equal;
    use crate::graph::{basic_family, is_isomorphic, Family};

    fn fam(kind: Family, p: &[usize]) -> Graph {
        basic_family(kind, p).unwrap()
    }

    #[test]
    fn five_vertex_pairs() {
        let r = same_deck_classes(5, 3, &SearchOptions::default()).unwrap();
        assert_eq!(r.graphs_enumerated, 34);
        assert_eq!(r.classes.len(), 2);
        let c4p1 = fam(Family::Cycle, &[4]).disjoint_union(&fam(Family::Path, &[1])).unwrap();
        let s211 = fam(Family::Spider, &[2, 1, 1]);
        let classes = r.class_graphs();
        let holds = |class: &Vec<Graph>, a: &Graph, b: &Graph| {
            class.len() == 2
                && class.iter().any(|g| is_isomorphic(g, a))
                && class.iter().any(|g| is_isomorphic(g, b))
        };
        assert!(classes.iter().any(|c| holds(c, &c4p1, &s211)));
        assert!(classes.iter().any(|c| holds(c, &c4p1.complement(), &s211.complement())));
    }

    #[test]
    fn six_vertices_four_cards_are_unique() {
        assert!(same_deck_classes(6, 4, &SearchOptions::default()).unwrap().classes.is_empty());
    }

    #[test]
    fn classes_are_sound_and_closed_under_complement() {
        let r = same_deck_classes(6, 3, &SearchOptions::default()).unwrap();
        assert!(!r.classes.is_empty());
        let classes = r.class_graphs();
        for class in &classes {
            let d0 = compute_deck(&class[0], 3).unwrap();
            for (i, g) in class.iter().enumerate() {
                assert!(decks_equal(&d0, &compute_deck(g, 3).unwrap()));
                for h in &class[i + 1..] {
                    assert!(!is_isomorphic(g, h));
                }
            }
            let comp = class[0].complement();
            let partner = classes.iter().find(|c| c.iter().any(|g| is_isomorphic(g, &comp))).unwrap();
            assert_eq!(partner.len(), class.len());
        }
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| same_deck_classes(7, 3, &SearchOptions::default()).unwrap())
        };
        let (a, b) = (run(1), run(3));
        assert_eq!(a.classes, b.classes);
        assert_eq!(a.graphs_enumerated, 1044);
    }

    #[test]
    fn resume_skips_logged_units() {
        let dir = tempfile::tempdir().unwrap();
        let opts = SearchOptions { checkpoint_dir: Some(dir.path().into()), resume: false };
        let first = same_deck_classes(6, 3, &opts).unwrap();
        let path = checkpoint_path(dir.path(), 6, 3);
        let lines = fs::read_to_string(&path).unwrap().lines().count();
        assert_eq!(lines, first.units);

        // keep two units and a torn third line
        let text = fs::read_to_string(&path).unwrap();
        let mut kept: Vec<&str> = text.lines().take(2).collect();
        let torn = &text.lines().nth(2).unwrap()[..10];
        kept.push(torn);
        fs::write(&path, kept.join("\n")).unwrap();

        let resumed = same_deck_classes(6, 3, &SearchOptions { resume: true, ..opts.clone() }).unwrap();
        assert_eq!(resumed.units_resumed, 2);
        assert_eq!(resumed.classes, first.classes);
        assert_eq!(resumed.graphs_enumerated, first.graphs_enumerated);
        assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), first.units);

        // a log for another enumeration is refused
        let other = checkpoint_path(dir.path(), 7, 3);
        fs::copy(&path, &other).unwrap();
        assert!(matches!(
            same_deck_classes(7, 3, &SearchOptions { resume: true, ..opts }),
            Err(Error::Checkpoint(_))
        ));
    }

    #[test]
    fn guards() {
        assert!(same_deck_classes(11, 3, &SearchOptions::default()).is_err());
        assert!(same_deck_classes(5, 6, &SearchOptions::default()).is_err());
    }
}

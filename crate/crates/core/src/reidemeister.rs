//! Reidemeister moves: detection of applicable sites, exact application,
//! and seeded random move walks for invariance testing.
//!
//! Detection beyond the first move works on the faces of the 4-valent
//! plane graph the diagram describes. The cyclic order of the four edge
//! ends at a crossing is the standard one: counting counterclockwise from
//! the incoming under-strand, the ports are under-in, `b`, under-out, `d`,
//! with the over-strand entering at `d` on a positive crossing and at `b`
//! on a negative one. Faces are the orbits of edge sides (darts) under
//! "arrive at a port, leave through the clockwise-adjacent port".
//!
//! * R1: a crossing whose two passages sit consecutively on one strand
//!   is a removable kink; a kink can be added at the start of any arc,
//!   with either handedness, the new loop on either side of the strand.
//! * R2: two edges on a common face can be pushed across each other; the
//!   removable pattern is a two-edge face whose edges are over-over and
//!   under-under with opposite crossing signs.
//! * R3: a three-edge face with three distinct corner crossings and an
//!   edge passing over (or under) both of its corners lets each strand
//!   slide across the opposite crossing, swapping the two passages along
//!   each boundary edge.

use crate::diagram::{Diagram, DiagramData, PassKind, Passage, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

/// Diagrams grown past this many crossings only shrink during random
/// walks.
const WALK_CROSSING_CAP: usize = 16;

/// The edge leaving passage `after` of `strand`, wrapping cyclically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Gap {
    pub strand: usize,
    pub after: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R3,
}

/// One applicable move at one place in a diagram. Sites are only
/// meaningful for the diagram they were detected in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSite {
    /// Insert a kink of the given handedness at the start of `arc`;
    /// `under_first` picks which side of the strand the loop lies on.
    R1Add {
        arc: usize,
        sign: Sign,
        under_first: bool,
    },
    /// Delete the kink at `crossing`.
    R1Remove { crossing: usize },
    /// Push the `over` edge across the `under` edge of a common face.
    /// The flags record the direction the face walk traverses each edge
    /// relative to strand orientation; together they pin down the order
    /// and handedness of the two new crossings.
    R2Add {
        over: Gap,
        under: Gap,
        over_forward: bool,
        under_forward: bool,
    },
    /// Pull apart the two-crossing overlap of crossings `low` and `high`.
    R2Remove { low: usize, high: usize },
    /// Slide the three strands bounding a triangular face; each listed
    /// edge has its two end passages swapped.
    R3 { swaps: [Gap; 3] },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Add { .. } => MoveKind::R1Add,
            MoveSite::R1Remove { .. } => MoveKind::R1Remove,
            MoveSite::R2Add { .. } => MoveKind::R2Add,
            MoveSite::R2Remove { .. } => MoveKind::R2Remove,
            MoveSite::R3 { .. } => MoveKind::R3,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MoveError {
    #[error("{kind:?} pattern check failed: the site is not applicable to this diagram")]
    InvalidSite { kind: MoveKind },
}

/// One side of an edge, as traversed by a face walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Dart {
    gap: usize,
    forward: bool,
}

/// The rotation system of the diagram: edges (gaps) indexed densely, and
/// for every crossing port the edge end attached there.
struct Embedding {
    gaps: Vec<Gap>,
    /// `(gap index, is tail)` for each port of each crossing.
    ports: Vec<[(usize, bool); 4]>,
}

/// `(incoming, outgoing)` ports of a passage in the counterclockwise
/// port order.
fn port_pair(kind: PassKind, sign: Sign) -> (usize, usize) {
    match (kind, sign) {
        (PassKind::Under, _) => (0, 2),
        (PassKind::Over, Sign::Positive) => (3, 1),
        (PassKind::Over, Sign::Negative) => (1, 3),
    }
}

fn embedding(d: &Diagram) -> Embedding {
    let mut gaps = Vec::new();
    let mut ports = vec![[(usize::MAX, false); 4]; d.crossing_count()];
    for (s, strand) in d.strands().iter().enumerate() {
        let n = strand.len();
        for after in 0..n {
            let id = gaps.len();
            gaps.push(Gap { strand: s, after });
            let tail = strand[after];
            let head = strand[(after + 1) % n];
            let (_, out_port) = port_pair(tail.kind, d.data().signs[tail.crossing]);
            let (in_port, _) = port_pair(head.kind, d.data().signs[head.crossing]);
            ports[tail.crossing][out_port] = (id, true);
            ports[head.crossing][in_port] = (id, false);
        }
    }
    Embedding { gaps, ports }
}

impl Embedding {
    /// The passage a dart runs into, together with its arrival port.
    fn arrival(&self, d: &Diagram, dart: Dart) -> (Passage, usize) {
        let gap = self.gaps[dart.gap];
        let strand = &d.strands()[gap.strand];
        let n = strand.len();
        let passage = if dart.forward {
            strand[(gap.after + 1) % n]
        } else {
            strand[gap.after]
        };
        let (in_port, out_port) = port_pair(passage.kind, d.data().signs[passage.crossing]);
        let port = if dart.forward { in_port } else { out_port };
        (passage, port)
    }

    fn next(&self, d: &Diagram, dart: Dart) -> Dart {
        let (passage, port) = self.arrival(d, dart);
        let leave = (port + 3) % 4;
        let (gap, is_tail) = self.ports[passage.crossing][leave];
        Dart {
            gap,
            forward: is_tail,
        }
    }
}

fn faces(d: &Diagram, emb: &Embedding) -> Vec<Vec<Dart>> {
    let dart_index = |dart: Dart| dart.gap * 2 + usize::from(dart.forward);
    let mut visited = vec![false; emb.gaps.len() * 2];
    let mut result = Vec::new();
    for gap in 0..emb.gaps.len() {
        for forward in [true, false] {
            let start = Dart { gap, forward };
            if visited[dart_index(start)] {
                continue;
            }
            let mut face = Vec::new();
            let mut dart = start;
            loop {
                visited[dart_index(dart)] = true;
                face.push(dart);
                dart = emb.next(d, dart);
                if dart == start {
                    break;
                }
            }
            result.push(face);
        }
    }
    result
}

/// Number of faces of the 4-valent graph; free loops carry no edges and
/// are invisible here. A connected diagram with `c ≥ 1` crossings is
/// planar exactly when this equals `c + 2`.
pub fn face_count(d: &Diagram) -> usize {
    let emb = embedding(d);
    faces(d, &emb).len()
}

/// All sites where a move of the given kind applies, in a deterministic
/// order.
pub fn detect(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    match kind {
        MoveKind::R1Add => detect_r1_add(d),
        MoveKind::R1Remove => detect_r1_remove(d),
        MoveKind::R2Add => detect_r2_add(d),
        MoveKind::R2Remove => detect_r2_remove(d),
        MoveKind::R3 => detect_r3(d),
    }
}

fn detect_r1_add(d: &Diagram) -> Vec<MoveSite> {
    let mut sites = Vec::new();
    for arc in 0..d.arc_count() {
        let whole_loop = d.strands()[d.strand_of_arc(arc)].is_empty();
        for sign in [Sign::Positive, Sign::Negative] {
            for under_first in [false, true] {
                // On a bare loop the two sides coincide after rotation.
                if whole_loop && under_first {
                    continue;
                }
                sites.push(MoveSite::R1Add {
                    arc,
                    sign,
                    under_first,
                });
            }
        }
    }
    sites
}

fn detect_r1_remove(d: &Diagram) -> Vec<MoveSite> {
    // A removable kink is an empty loop: the crossing's two passages are
    // cyclically adjacent on one strand. Sharing an arc is not enough,
    // since the loop may still pass over other strands.
    let mut sites = BTreeSet::new();
    for strand in d.strands() {
        let n = strand.len();
        if n < 2 {
            continue;
        }
        for i in 0..n {
            if strand[i].crossing == strand[(i + 1) % n].crossing {
                sites.insert(strand[i].crossing);
            }
        }
    }
    sites
        .into_iter()
        .map(|crossing| MoveSite::R1Remove { crossing })
        .collect()
}

fn gap_ends(d: &Diagram, gap: Gap) -> (Passage, Passage) {
    let strand = &d.strands()[gap.strand];
    let n = strand.len();
    (strand[gap.after], strand[(gap.after + 1) % n])
}

fn detect_r2_add(d: &Diagram) -> Vec<MoveSite> {
    let emb = embedding(d);
    let mut sites = BTreeSet::new();
    for face in faces(d, &emb) {
        for &over in &face {
            for &under in &face {
                if emb.gaps[over.gap] == emb.gaps[under.gap] {
                    continue;
                }
                sites.insert((
                    emb.gaps[over.gap],
                    emb.gaps[under.gap],
                    over.forward,
                    under.forward,
                ));
            }
        }
    }
    sites
        .into_iter()
        .map(
            |(over, under, over_forward, under_forward)| MoveSite::R2Add {
                over,
                under,
                over_forward,
                under_forward,
            },
        )
        .collect()
}

fn detect_r2_remove(d: &Diagram) -> Vec<MoveSite> {
    let emb = embedding(d);
    let mut sites = BTreeSet::new();
    for face in faces(d, &emb) {
        if face.len() != 2 {
            continue;
        }
        let (g1, g2) = (emb.gaps[face[0].gap], emb.gaps[face[1].gap]);
        if g1 == g2 {
            continue;
        }
        let ends1 = gap_ends(d, g1);
        let ends2 = gap_ends(d, g2);
        let corners = [ends1.0.crossing, ends1.1.crossing];
        if corners[0] == corners[1] {
            continue;
        }
        let kinds = |ends: (Passage, Passage)| (ends.0.kind, ends.1.kind);
        let over_over = (PassKind::Over, PassKind::Over);
        let under_under = (PassKind::Under, PassKind::Under);
        let poked = (kinds(ends1) == over_over && kinds(ends2) == under_under)
            || (kinds(ends1) == under_under && kinds(ends2) == over_over);
        if !poked {
            continue;
        }
        if d.data().signs[corners[0]] == d.data().signs[corners[1]] {
            continue;
        }
        sites.insert((corners[0].min(corners[1]), corners[0].max(corners[1])));
    }
    sites
        .into_iter()
        .map(|(low, high)| MoveSite::R2Remove { low, high })
        .collect()
}

fn detect_r3(d: &Diagram) -> Vec<MoveSite> {
    let emb = embedding(d);
    let mut sites = BTreeSet::new();
    for face in faces(d, &emb) {
        if face.len() != 3 {
            continue;
        }
        let mut gaps = [
            emb.gaps[face[0].gap],
            emb.gaps[face[1].gap],
            emb.gaps[face[2].gap],
        ];
        gaps.sort_unstable();
        if gaps[0] == gaps[1] || gaps[1] == gaps[2] {
            continue;
        }
        let mut corners: Vec<usize> = face
            .iter()
            .map(|&dart| emb.arrival(d, dart).0.crossing)
            .collect();
        corners.sort_unstable();
        corners.dedup();
        if corners.len() != 3 {
            continue;
        }
        // One strand must run over (or under) both of its corners for the
        // middle strand to slide across.
        let slidable = gaps.iter().any(|&g| {
            let (tail, head) = gap_ends(d, g);
            tail.kind == head.kind
        });
        if !slidable {
            continue;
        }
        sites.insert(gaps);
    }
    sites
        .into_iter()
        .map(|swaps| MoveSite::R3 { swaps })
        .collect()
}

/// Applies a detected move. The site must come from [`detect`] on this
/// same diagram; anything else fails the pattern check.
pub fn apply(d: &Diagram, site: &MoveSite) -> Result<Diagram, MoveError> {
    if !detect(d, site.kind()).contains(site) {
        return Err(MoveError::InvalidSite { kind: site.kind() });
    }
    let mut data = d.data().clone();
    match *site {
        MoveSite::R1Add {
            arc,
            sign,
            under_first,
        } => {
            let n = data.signs.len();
            data.signs.push(sign);
            let (strand_idx, insert_at) = match d.under_start(arc) {
                Some((s, pos)) => (s, pos + 1),
                None => (d.strand_of_arc(arc), 0),
            };
            let pair = if under_first {
                [Passage::under(n), Passage::over(n)]
            } else {
                [Passage::over(n), Passage::under(n)]
            };
            data.strands[strand_idx].splice(insert_at..insert_at, pair);
        }
        MoveSite::R1Remove { crossing } => {
            data = without_crossings(&data, &[crossing]);
        }
        MoveSite::R2Add {
            over,
            under,
            over_forward,
            under_forward,
        } => {
            let n = data.signs.len();
            let m = n + 1;
            // The face walk keeps its face on the left, so the two edges
            // bound a disk traversed counterclockwise; pushing the over
            // edge across it meets the under edge with a handedness fixed
            // by the under edge's walk direction, and the two crossings
            // appear in opposite orders along the two walk directions.
            let sign_n = if under_forward {
                Sign::Positive
            } else {
                Sign::Negative
            };
            data.signs.push(sign_n);
            data.signs.push(sign_n.flipped());
            let over_pair = [Passage::over(n), Passage::over(m)];
            let under_pair = if over_forward == under_forward {
                [Passage::under(m), Passage::under(n)]
            } else {
                [Passage::under(n), Passage::under(m)]
            };
            let mut inserts = [
                (over.strand, over.after + 1, over_pair),
                (under.strand, under.after + 1, under_pair),
            ];
            // Later positions first, so earlier indices stay valid when
            // both edges lie on one strand.
            inserts.sort_by_key(|insert| std::cmp::Reverse(insert.1));
            for (strand, position, pair) in inserts {
                data.strands[strand].splice(position..position, pair);
            }
        }
        MoveSite::R2Remove { low, high } => {
            data = without_crossings(&data, &[low, high]);
        }
        MoveSite::R3 { swaps } => {
            for gap in swaps {
                let strand = &mut data.strands[gap.strand];
                let n = strand.len();
                let next = (gap.after + 1) % n;
                strand.swap(gap.after, next);
            }
        }
    }
    Ok(Diagram::new(data).expect("moves preserve validity"))
}

fn without_crossings(data: &DiagramData, removed: &[usize]) -> DiagramData {
    let signs: Vec<Sign> = data
        .signs
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, &s)| s)
        .collect();
    let strands = data
        .strands
        .iter()
        .map(|strand| {
            strand
                .iter()
                .filter(|p| !removed.contains(&p.crossing))
                .map(|p| Passage {
                    crossing: p.crossing - removed.iter().filter(|&&r| r < p.crossing).count(),
                    kind: p.kind,
                })
                .collect()
        })
        .collect();
    DiagramData { signs, strands }
}

/// Runs `steps` uniformly random applicable moves with a seeded generator
/// and returns each applied site with the diagram it produced. Diagrams
/// at the crossing cap only shrink; a step with no applicable move ends
/// the walk.
pub fn random_walk_trace(d: &Diagram, steps: usize, seed: u64) -> Vec<(MoveSite, Diagram)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    let mut trace = Vec::new();
    for _ in 0..steps {
        let mut kinds = vec![MoveKind::R1Remove, MoveKind::R2Remove, MoveKind::R3];
        if current.crossing_count() < WALK_CROSSING_CAP {
            kinds.push(MoveKind::R1Add);
        }
        if current.crossing_count() + 2 <= WALK_CROSSING_CAP {
            kinds.push(MoveKind::R2Add);
        }
        let sites: Vec<MoveSite> = kinds.iter().flat_map(|&k| detect(&current, k)).collect();
        if sites.is_empty() {
            break;
        }
        let site = sites[rng.gen_range(0..sites.len())];
        current = apply(&current, &site).expect("detected sites apply");
        trace.push((site, current.clone()));
    }
    trace
}

/// The diagram at the end of [`random_walk_trace`].
pub fn random_walk(d: &Diagram, steps: usize, seed: u64) -> Diagram {
    random_walk_trace(d, steps, seed)
        .pop()
        .map(|(_, diagram)| diagram)
        .unwrap_or_else(|| d.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::canonical_alexander;
    use crate::laurent::LaurentPoly;
    use crate::notation::parse_pd;

    fn o(c: usize) -> Passage {
        Passage::over(c)
    }

    fn u(c: usize) -> Passage {
        Passage::under(c)
    }

    fn kink() -> Diagram {
        Diagram::from_parts(vec![Sign::Positive], vec![vec![o(0), u(0)]]).unwrap()
    }

    fn trefoil() -> Diagram {
        Diagram::from_parts(
            vec![Sign::Positive; 3],
            vec![vec![o(0), u(1), o(2), u(0), o(1), u(2)]],
        )
        .unwrap()
    }

    fn figure_eight() -> Diagram {
        parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap()
    }

    fn delta(d: &Diagram) -> LaurentPoly {
        canonical_alexander(d).unwrap()
    }

    #[test]
    fn face_counts_satisfy_the_euler_formula() {
        assert_eq!(face_count(&kink()), 3);
        assert_eq!(face_count(&trefoil()), 5);
        assert_eq!(face_count(&figure_eight()), 6);
    }

    #[test]
    fn unknot_offers_exactly_two_kink_insertions() {
        let sites = detect(&Diagram::unknot(), MoveKind::R1Add);
        assert_eq!(
            sites,
            vec![
                MoveSite::R1Add {
                    arc: 0,
                    sign: Sign::Positive,
                    under_first: false
                },
                MoveSite::R1Add {
                    arc: 0,
                    sign: Sign::Negative,
                    under_first: false
                },
            ]
        );
        for kind in [
            MoveKind::R1Remove,
            MoveKind::R2Add,
            MoveKind::R2Remove,
            MoveKind::R3,
        ] {
            assert!(detect(&Diagram::unknot(), kind).is_empty());
        }
    }

    #[test]
    fn kink_addition_and_removal_are_inverse() {
        let unknot = Diagram::unknot();
        let added = apply(
            &unknot,
            &MoveSite::R1Add {
                arc: 0,
                sign: Sign::Positive,
                under_first: false,
            },
        )
        .unwrap();
        assert_eq!(added, kink());
        let removed = apply(&added, &MoveSite::R1Remove { crossing: 0 }).unwrap();
        assert_eq!(removed, unknot);

        let d = trefoil();
        for site in detect(&d, MoveKind::R1Add) {
            let grown = apply(&d, &site).unwrap();
            assert_eq!(grown.crossing_count(), 4);
            let sign = match site {
                MoveSite::R1Add { sign, .. } => sign,
                _ => unreachable!(),
            };
            assert_eq!(grown.writhe(), d.writhe() + sign.value());
            let back = apply(&grown, &MoveSite::R1Remove { crossing: 3 }).unwrap();
            assert_eq!(back, d);
        }
    }

    #[test]
    fn kink_detection_requires_a_loop() {
        assert_eq!(
            detect(&kink(), MoveKind::R1Remove),
            vec![MoveSite::R1Remove { crossing: 0 }]
        );
        assert!(detect(&trefoil(), MoveKind::R1Remove).is_empty());
        assert!(detect(&figure_eight(), MoveKind::R1Remove).is_empty());

        // Crossing 3 closes a loop on its own arc, but the loop passes
        // over crossings 4 and 2 on the way; removing it alone would not
        // be an isotopy, so only the two empty loops qualify.
        let crowded_loop = Diagram::from_parts(
            vec![
                Sign::Positive,
                Sign::Positive,
                Sign::Negative,
                Sign::Negative,
                Sign::Positive,
            ],
            vec![vec![
                o(0),
                u(0),
                u(2),
                o(3),
                o(4),
                o(2),
                u(3),
                u(4),
                o(1),
                u(1),
            ]],
        )
        .unwrap();
        assert_eq!(face_count(&crowded_loop), 7, "test diagram is planar");
        assert_eq!(
            detect(&crowded_loop, MoveKind::R1Remove),
            vec![
                MoveSite::R1Remove { crossing: 0 },
                MoveSite::R1Remove { crossing: 1 }
            ]
        );
    }

    #[test]
    fn alternating_diagrams_offer_no_reductions_or_slides() {
        for d in [trefoil(), figure_eight()] {
            assert!(detect(&d, MoveKind::R2Remove).is_empty());
            assert!(detect(&d, MoveKind::R3).is_empty());
        }
    }

    #[test]
    fn pushes_are_planar_invariant_and_reversible() {
        for base in [kink(), trefoil()] {
            let reference = delta(&base);
            let sites = detect(&base, MoveKind::R2Add);
            assert!(!sites.is_empty());
            for site in sites {
                let pushed = apply(&base, &site).unwrap();
                let c = pushed.crossing_count();
                assert_eq!(c, base.crossing_count() + 2);
                assert_eq!(pushed.writhe(), base.writhe());
                assert_eq!(face_count(&pushed), c + 2, "push left the plane: {site:?}");
                assert_eq!(delta(&pushed), reference, "push changed the knot: {site:?}");
                let undo = MoveSite::R2Remove {
                    low: base.crossing_count(),
                    high: base.crossing_count() + 1,
                };
                assert!(detect(&pushed, MoveKind::R2Remove).contains(&undo));
                assert_eq!(apply(&pushed, &undo).unwrap(), base);
            }
        }
    }

    #[test]
    fn triangle_slides_preserve_the_knot() {
        // Alternating diagrams have no triangle with a doubly-over edge;
        // pushing one strand of the trefoil across a face creates some.
        let base = trefoil();
        let reference = delta(&base);
        let mut slides = 0;
        for push in detect(&base, MoveKind::R2Add) {
            let pushed = apply(&base, &push).unwrap();
            for site in detect(&pushed, MoveKind::R3) {
                let slid = apply(&pushed, &site).unwrap();
                assert_eq!(slid.crossing_count(), pushed.crossing_count());
                assert_eq!(slid.writhe(), pushed.writhe());
                assert_eq!(face_count(&slid), slid.crossing_count() + 2);
                assert_eq!(delta(&slid), reference);
                slides += 1;
            }
        }
        assert!(slides > 0, "no triangle slide found after any push");
    }

    #[test]
    fn random_walks_are_deterministic_capped_and_invariant() {
        let base = figure_eight();
        let reference = delta(&base);
        let trace = random_walk_trace(&base, 12, 9);
        assert!(!trace.is_empty());
        for (_, diagram) in &trace {
            assert!(diagram.crossing_count() <= WALK_CROSSING_CAP);
            assert_eq!(diagram.component_count(), 1);
            assert_eq!(delta(diagram), reference);
        }
        let replay = random_walk_trace(&base, 12, 9);
        assert_eq!(trace, replay);
        assert_eq!(random_walk(&base, 12, 9), trace.last().unwrap().1);
    }

    #[test]
    fn stale_or_foreign_sites_are_rejected() {
        let err = apply(&trefoil(), &MoveSite::R1Remove { crossing: 0 }).unwrap_err();
        assert_eq!(
            err,
            MoveError::InvalidSite {
                kind: MoveKind::R1Remove
            }
        );
        let err = apply(&trefoil(), &MoveSite::R2Remove { low: 0, high: 1 }).unwrap_err();
        assert_eq!(
            err,
            MoveError::InvalidSite {
                kind: MoveKind::R2Remove
            }
        );
        assert!(apply(
            &kink(),
            &MoveSite::R1Add {
                arc: 5,
                sign: Sign::Positive,
                under_first: false
            }
        )
        .is_err());
    }
}

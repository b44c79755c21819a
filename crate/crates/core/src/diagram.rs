//! Combinatorial model of an oriented knot or link diagram.
//!
//! A diagram is a set of signed crossings together with one closed
//! *strand* per link component, each strand recorded as the cyclic
//! sequence of crossing passages (over or under) met while walking the
//! component in its orientation. Every crossing is passed exactly once
//! over and exactly once under across all strands.
//!
//! *Arcs* — the pieces of a component between consecutive under-passages —
//! are derived from the strand sequences, as is the incidence structure of
//! each crossing (which arc passes over, which arc enters underneath and
//! which leaves). A strand with no under-passages forms a single closed
//! arc; a strand with no passages at all is a free loop.
//!
//! Construction canonicalizes the strand sequences (each strand rotated to
//! a fixed starting passage, strands sorted), so structural equality of
//! [`Diagram`] values is equality of labelled diagrams.

use thiserror::Error;

/// Handedness of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    /// `+1` or `-1`, the crossing's contribution to the writhe.
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Whether a strand passes over or under at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PassKind {
    Over,
    Under,
}

/// One visit of a strand to a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Passage {
    pub crossing: usize,
    pub kind: PassKind,
}

impl Passage {
    pub fn over(crossing: usize) -> Self {
        Self {
            crossing,
            kind: PassKind::Over,
        }
    }

    pub fn under(crossing: usize) -> Self {
        Self {
            crossing,
            kind: PassKind::Under,
        }
    }
}

/// Raw diagram content: a sign per crossing and the passage sequence of
/// each strand. This is the data a [`Diagram`] is built from and the form
/// in which surgery (switching, smoothing, splicing) is performed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagramData {
    pub signs: Vec<Sign>,
    pub strands: Vec<Vec<Passage>>,
}

/// Incidence of a single crossing on the arcs of the diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    /// Arc passing over the crossing.
    pub over: usize,
    /// Arc that ends by going under the crossing.
    pub under_in: usize,
    /// Arc that begins by emerging from under the crossing.
    pub under_out: usize,
}

/// A structural defect found while validating diagram data.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("a passage references crossing {crossing}, but only {total} signs are given")]
    UnknownCrossing { crossing: usize, total: usize },
    #[error("crossing {crossing} is passed {count} times {kind:?}, expected exactly once")]
    PassageCount {
        crossing: usize,
        kind: PassKind,
        count: usize,
    },
    #[error("arc {arc} enters under {incoming} crossings and leaves under {outgoing}; expected once each or never")]
    ArcEndpoints {
        arc: usize,
        incoming: usize,
        outgoing: usize,
    },
}

/// A validated, canonicalized knot or link diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    data: DiagramData,
    crossings: Vec<Crossing>,
    successor: Vec<usize>,
    arc_strand: Vec<usize>,
}

impl Diagram {
    /// Validates and canonicalizes raw diagram data.
    pub fn new(mut data: DiagramData) -> Result<Self, Vec<Violation>> {
        let violations = validate(&data);
        if !violations.is_empty() {
            return Err(violations);
        }
        canonicalize(&mut data);
        Ok(Self::derive(data))
    }

    /// Convenience wrapper over [`Diagram::new`].
    pub fn from_parts(
        signs: Vec<Sign>,
        strands: Vec<Vec<Passage>>,
    ) -> Result<Self, Vec<Violation>> {
        Self::new(DiagramData { signs, strands })
    }

    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self::new(DiagramData {
            signs: Vec::new(),
            strands: vec![Vec::new()],
        })
        .expect("the unknot is a valid diagram")
    }

    /// Rebuilds a diagram from per-crossing arc incidences. The order in
    /// which an arc crosses over several crossings is not recorded in this
    /// form; ascending crossing index is used. Arcs that never pass under
    /// anything become their own closed components.
    pub fn from_crossings(crossings: &[Crossing]) -> Result<Self, Vec<Violation>> {
        let mut arc_ids: Vec<usize> = crossings
            .iter()
            .flat_map(|c| [c.over, c.under_in, c.under_out])
            .collect();
        arc_ids.sort_unstable();
        arc_ids.dedup();

        let mut violations = Vec::new();
        let mut ends_at = vec![None; arc_ids.len()]; // crossing where the arc goes under_in
        let position = |arc: usize| arc_ids.binary_search(&arc).unwrap();
        for &arc in &arc_ids {
            let incoming: Vec<usize> = (0..crossings.len())
                .filter(|&i| crossings[i].under_in == arc)
                .collect();
            let outgoing = crossings.iter().filter(|c| c.under_out == arc).count();
            if !(incoming.len() == 1 && outgoing == 1 || incoming.is_empty() && outgoing == 0) {
                violations.push(Violation::ArcEndpoints {
                    arc,
                    incoming: incoming.len(),
                    outgoing,
                });
                continue;
            }
            ends_at[position(arc)] = incoming.first().copied();
        }
        if !violations.is_empty() {
            return Err(violations);
        }

        let overs_of = |arc: usize| -> Vec<Passage> {
            (0..crossings.len())
                .filter(|&i| crossings[i].over == arc)
                .map(Passage::over)
                .collect()
        };

        let mut visited = vec![false; arc_ids.len()];
        let mut strands = Vec::new();
        for start in 0..arc_ids.len() {
            if visited[start] {
                continue;
            }
            let mut strand = Vec::new();
            if ends_at[start].is_none() {
                visited[start] = true;
                strand.extend(overs_of(arc_ids[start]));
            } else {
                let mut idx = start;
                loop {
                    visited[idx] = true;
                    strand.extend(overs_of(arc_ids[idx]));
                    let terminal = ends_at[idx].expect("anchored arcs end under a crossing");
                    strand.push(Passage::under(terminal));
                    let next = crossings[terminal].under_out;
                    idx = position(next);
                    if idx == start {
                        break;
                    }
                }
            }
            strands.push(strand);
        }
        let signs = crossings.iter().map(|c| c.sign).collect();
        Self::new(DiagramData { signs, strands })
    }

    fn derive(data: DiagramData) -> Self {
        let mut crossings: Vec<Crossing> = data
            .signs
            .iter()
            .map(|&sign| Crossing {
                sign,
                over: usize::MAX,
                under_in: usize::MAX,
                under_out: usize::MAX,
            })
            .collect();
        let mut successor = Vec::new();
        let mut arc_strand = Vec::new();
        for (strand_idx, strand) in data.strands.iter().enumerate() {
            let unders: Vec<usize> = strand
                .iter()
                .enumerate()
                .filter(|(_, p)| p.kind == PassKind::Under)
                .map(|(pos, _)| pos)
                .collect();
            if unders.is_empty() {
                // The whole strand is one closed arc (a free loop if it
                // has no passages at all).
                let arc = successor.len();
                successor.push(arc);
                arc_strand.push(strand_idx);
                for p in strand {
                    crossings[p.crossing].over = arc;
                }
                continue;
            }
            // One arc begins just after each under-passage.
            let k = unders.len();
            let base = successor.len();
            for i in 0..k {
                successor.push(base + (i + 1) % k);
                arc_strand.push(strand_idx);
                let crossing = strand[unders[i]].crossing;
                crossings[crossing].under_out = base + i;
                crossings[crossing].under_in = base + (i + k - 1) % k;
            }
            for (pos, p) in strand.iter().enumerate() {
                if p.kind == PassKind::Over {
                    let arc = match unders.binary_search(&pos) {
                        Err(insertion) => base + (insertion + k - 1) % k,
                        Ok(_) => unreachable!("a position is either over or under"),
                    };
                    crossings[p.crossing].over = arc;
                }
            }
        }
        Self {
            data,
            crossings,
            successor,
            arc_strand,
        }
    }

    pub fn data(&self) -> &DiagramData {
        &self.data
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn strands(&self) -> &[Vec<Passage>] {
        &self.data.strands
    }

    pub fn crossing_count(&self) -> usize {
        self.data.signs.len()
    }

    pub fn component_count(&self) -> usize {
        self.data.strands.len()
    }

    pub fn arc_count(&self) -> usize {
        self.successor.len()
    }

    /// The arc following `arc` along its component's orientation (itself
    /// for an arc that never passes under a crossing).
    pub fn successor(&self, arc: usize) -> usize {
        self.successor[arc]
    }

    /// Which strand an arc belongs to.
    pub fn strand_of_arc(&self, arc: usize) -> usize {
        self.arc_strand[arc]
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.data.signs.iter().map(|s| s.value()).sum()
    }

    /// Whether consecutive passages along every strand strictly alternate
    /// over/under *at distinct crossings*. Passing the same crossing twice
    /// in a row (a kink) disqualifies a diagram even though the over/under
    /// flags alternate there.
    pub fn is_alternating(&self) -> bool {
        self.data.strands.iter().all(|strand| {
            let n = strand.len();
            (0..n).all(|i| {
                let a = strand[i];
                let b = strand[(i + 1) % n];
                a.kind != b.kind && a.crossing != b.crossing
            })
        })
    }

    /// The mirror image: over and under swap at every crossing, so every
    /// sign flips.
    pub fn mirror(&self) -> Self {
        let data = DiagramData {
            signs: self.data.signs.iter().map(|s| s.flipped()).collect(),
            strands: self
                .data
                .strands
                .iter()
                .map(|strand| {
                    strand
                        .iter()
                        .map(|p| Passage {
                            crossing: p.crossing,
                            kind: match p.kind {
                                PassKind::Over => PassKind::Under,
                                PassKind::Under => PassKind::Over,
                            },
                        })
                        .collect()
                })
                .collect(),
        };
        Self::new(data).expect("mirroring preserves validity")
    }

    /// All components reversed. Reversing both strands through a crossing
    /// preserves its sign, so the signs are unchanged.
    pub fn reverse(&self) -> Self {
        let data = DiagramData {
            signs: self.data.signs.clone(),
            strands: self
                .data
                .strands
                .iter()
                .map(|strand| strand.iter().rev().copied().collect())
                .collect(),
        };
        Self::new(data).expect("reversal preserves validity")
    }

    /// Relabels crossing `i` as `permutation[i]`.
    ///
    /// Panics unless `permutation` is a permutation of `0..crossing_count`.
    pub fn permute_crossings(&self, permutation: &[usize]) -> Self {
        let n = self.crossing_count();
        assert_eq!(permutation.len(), n, "permutation length mismatch");
        let mut seen = vec![false; n];
        for &target in permutation {
            assert!(target < n && !seen[target], "not a permutation");
            seen[target] = true;
        }
        let mut signs = vec![Sign::Positive; n];
        for (from, &to) in permutation.iter().enumerate() {
            signs[to] = self.data.signs[from];
        }
        let strands = self
            .data
            .strands
            .iter()
            .map(|strand| {
                strand
                    .iter()
                    .map(|p| Passage {
                        crossing: permutation[p.crossing],
                        kind: p.kind,
                    })
                    .collect()
            })
            .collect();
        Self::new(DiagramData { signs, strands }).expect("relabelling preserves validity")
    }

    /// Strand index and position of the under-passage at which `arc`
    /// terminates; `None` if the arc never passes under a crossing.
    pub(crate) fn under_end(&self, arc: usize) -> Option<(usize, usize)> {
        let crossing = (0..self.crossings.len()).find(|&c| self.crossings[c].under_in == arc)?;
        let strand_idx = self.arc_strand[arc];
        let pos = self.data.strands[strand_idx]
            .iter()
            .position(|p| *p == Passage::under(crossing))
            .expect("the under passage lies on the arc's strand");
        Some((strand_idx, pos))
    }

    /// Strand index and position of the under-passage from which `arc`
    /// emerges; `None` if the arc never passes under a crossing.
    pub(crate) fn under_start(&self, arc: usize) -> Option<(usize, usize)> {
        let crossing = (0..self.crossings.len()).find(|&c| self.crossings[c].under_out == arc)?;
        let strand_idx = self.arc_strand[arc];
        let pos = self.data.strands[strand_idx]
            .iter()
            .position(|p| *p == Passage::under(crossing))
            .expect("the under passage lies on the arc's strand");
        Some((strand_idx, pos))
    }

    /// Arcs grouped by the strand they belong to, plus whether the diagram
    /// is split: true iff the strands fall into two or more groups that
    /// share no crossing (a crossingless strand alongside anything else
    /// already splits the diagram).
    pub fn split_components(&self) -> (Vec<Vec<usize>>, bool) {
        let n = self.component_count();
        let arcs: Vec<Vec<usize>> = (0..n)
            .map(|s| {
                (0..self.arc_count())
                    .filter(|&a| self.arc_strand[a] == s)
                    .collect()
            })
            .collect();

        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut over_strand = vec![usize::MAX; self.crossing_count()];
        let mut under_strand = vec![usize::MAX; self.crossing_count()];
        for (s, strand) in self.data.strands.iter().enumerate() {
            for p in strand {
                match p.kind {
                    PassKind::Over => over_strand[p.crossing] = s,
                    PassKind::Under => under_strand[p.crossing] = s,
                }
            }
        }
        for c in 0..self.crossing_count() {
            let (a, b) = (
                root(&mut parent, over_strand[c]),
                root(&mut parent, under_strand[c]),
            );
            parent[a] = b;
        }
        let mut roots: Vec<usize> = (0..n).map(|s| root(&mut parent, s)).collect();
        roots.sort_unstable();
        roots.dedup();
        (arcs, roots.len() > 1)
    }
}

fn validate(data: &DiagramData) -> Vec<Violation> {
    let total = data.signs.len();
    let mut overs = vec![0usize; total];
    let mut unders = vec![0usize; total];
    let mut violations = Vec::new();
    for strand in &data.strands {
        for p in strand {
            if p.crossing >= total {
                violations.push(Violation::UnknownCrossing {
                    crossing: p.crossing,
                    total,
                });
                continue;
            }
            match p.kind {
                PassKind::Over => overs[p.crossing] += 1,
                PassKind::Under => unders[p.crossing] += 1,
            }
        }
    }
    for crossing in 0..total {
        if overs[crossing] != 1 {
            violations.push(Violation::PassageCount {
                crossing,
                kind: PassKind::Over,
                count: overs[crossing],
            });
        }
        if unders[crossing] != 1 {
            violations.push(Violation::PassageCount {
                crossing,
                kind: PassKind::Under,
                count: unders[crossing],
            });
        }
    }
    violations
}

/// Rotates each strand to a fixed starting passage and sorts the strands,
/// without renumbering crossings. Passages are globally distinct in a
/// valid diagram, so the result is a unique representative of the diagram
/// up to choice of strand basepoints and strand order.
pub(crate) fn canonicalize(data: &mut DiagramData) {
    for strand in &mut data.strands {
        if let Some(min_pos) = (0..strand.len()).min_by_key(|&i| strand[i]) {
            strand.rotate_left(min_pos);
        }
    }
    data.strands.sort();
}

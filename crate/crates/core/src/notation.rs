//! Reading and writing planar-diagram (PD) and signed Gauss notations.
//!
//! A PD code lists one `X[a,b,c,d]` token per crossing, the four edge
//! labels counterclockwise from the incoming under-strand edge: `a` is the
//! edge entering underneath, `c` the edge leaving underneath, `b` and `d`
//! the two over-strand edges. Each edge label appears exactly twice in the
//! whole code. The direction of every edge is recovered structurally:
//! `a` slots are always edge heads and `c` slots always tails, and the
//! constraints "an edge has one head and one tail" and "one of `b`,`d` is
//! the over-entry, the other the over-exit" propagate to a fixpoint.
//! Components that never pass under anything leave their over-entry choice
//! genuinely undetermined; the smallest-numbered unresolved crossing is
//! then read as entering at `d` (a positive crossing). A bare `O` token
//! denotes a crossingless free loop, and the empty code is the unknot.
//!
//! A signed Gauss code lists the passages of a single component in order,
//! `O3+`/`U3+`-style; both passages of a crossing must carry the
//! crossing's sign.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramData, PassKind, Passage, Sign, Violation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotationError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("edge label {label} occurs {count} times, expected exactly 2")]
    EdgeCount { label: usize, count: usize },
    #[error("edge directions around crossing {crossing} are contradictory")]
    Inconsistent { crossing: usize },
    #[error("crossing label {label} must appear exactly once over and once under")]
    GaussLabelCount { label: usize },
    #[error("crossing label {label} carries conflicting signs")]
    GaussSignConflict { label: usize },
    #[error(
        "Gauss notation describes a single closed component, but the diagram has {components}"
    )]
    MultiComponent { components: usize },
    #[error("notation describes an invalid diagram: {0:?}")]
    Structure(Vec<Violation>),
}

fn syntax(message: impl Into<String>) -> NotationError {
    NotationError::Syntax(message.into())
}

/// Parses a PD code into a diagram. Crossings are numbered in token order.
pub fn parse_pd(text: &str) -> Result<Diagram, NotationError> {
    let compact: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut tuples: Vec<[usize; 4]> = Vec::new();
    let mut free_loops = 0usize;
    let mut i = 0;
    while i < compact.len() {
        match compact[i] {
            'O' => {
                i += 1;
                if compact.get(i) == Some(&'[') {
                    return Err(syntax("a free loop token 'O' takes no arguments"));
                }
                free_loops += 1;
            }
            'X' => {
                i += 1;
                if compact.get(i) != Some(&'[') {
                    return Err(syntax("expected '[' after 'X'"));
                }
                i += 1;
                let mut tuple = [0usize; 4];
                for (slot, value) in tuple.iter_mut().enumerate() {
                    let start = i;
                    while compact.get(i).is_some_and(|c| c.is_ascii_digit()) {
                        i += 1;
                    }
                    if i == start {
                        return Err(syntax("expected an edge label"));
                    }
                    let digits: String = compact[start..i].iter().collect();
                    *value = digits
                        .parse()
                        .map_err(|_| syntax(format!("edge label {digits} is out of range")))?;
                    let delimiter = if slot == 3 { ']' } else { ',' };
                    if compact.get(i) != Some(&delimiter) {
                        return Err(syntax(format!("expected {delimiter:?} in crossing tuple")));
                    }
                    i += 1;
                }
                tuples.push(tuple);
            }
            other => return Err(syntax(format!("unexpected character {other:?}"))),
        }
    }
    if tuples.is_empty() && free_loops == 0 {
        free_loops = 1; // the empty code is the unknot
    }
    diagram_from_tuples(&tuples, free_loops)
}

fn assign(
    roles: &mut [[Option<bool>; 4]],
    queue: &mut Vec<(usize, usize)>,
    crossing: usize,
    slot: usize,
    head: bool,
) -> Result<(), NotationError> {
    match roles[crossing][slot] {
        None => {
            roles[crossing][slot] = Some(head);
            queue.push((crossing, slot));
            Ok(())
        }
        Some(existing) if existing == head => Ok(()),
        Some(_) => Err(NotationError::Inconsistent { crossing }),
    }
}

fn diagram_from_tuples(tuples: &[[usize; 4]], free_loops: usize) -> Result<Diagram, NotationError> {
    let mut occurrences: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (x, tuple) in tuples.iter().enumerate() {
        for (slot, &label) in tuple.iter().enumerate() {
            occurrences.entry(label).or_default().push((x, slot));
        }
    }
    let mut labels: Vec<usize> = occurrences.keys().copied().collect();
    labels.sort_unstable();
    for &label in &labels {
        let count = occurrences[&label].len();
        if count != 2 {
            return Err(NotationError::EdgeCount { label, count });
        }
    }

    // `Some(true)` marks an edge head (the edge arrives at this slot),
    // `Some(false)` a tail (the edge leaves from it).
    let mut roles: Vec<[Option<bool>; 4]> = vec![[None; 4]; tuples.len()];
    let mut queue: Vec<(usize, usize)> = Vec::new();
    for x in 0..tuples.len() {
        assign(&mut roles, &mut queue, x, 0, true)?;
        assign(&mut roles, &mut queue, x, 2, false)?;
    }
    loop {
        while let Some((x, slot)) = queue.pop() {
            let head = roles[x][slot].expect("queued slots are assigned");
            let label = tuples[x][slot];
            let pair = &occurrences[&label];
            let (ox, oslot) = if pair[0] == (x, slot) {
                pair[1]
            } else {
                pair[0]
            };
            assign(&mut roles, &mut queue, ox, oslot, !head)?;
            if slot == 1 || slot == 3 {
                assign(&mut roles, &mut queue, x, 4 - slot, !head)?;
            }
        }
        match (0..tuples.len()).find(|&x| roles[x][3].is_none()) {
            Some(x) => assign(&mut roles, &mut queue, x, 3, true)?,
            None => break,
        }
    }

    let signs: Vec<Sign> = (0..tuples.len())
        .map(|x| {
            if roles[x][3] == Some(true) {
                Sign::Positive // over strand enters at slot d
            } else {
                Sign::Negative
            }
        })
        .collect();

    let mut head_of: HashMap<usize, (usize, usize)> = HashMap::new();
    for x in 0..tuples.len() {
        for slot in 0..4 {
            if roles[x][slot] == Some(true) {
                head_of.insert(tuples[x][slot], (x, slot));
            }
        }
    }

    let mut visited: HashMap<usize, bool> = labels.iter().map(|&l| (l, false)).collect();
    let mut strands: Vec<Vec<Passage>> = Vec::new();
    for x0 in 0..tuples.len() {
        for s0 in 0..4 {
            if roles[x0][s0] != Some(true) || visited[&tuples[x0][s0]] {
                continue;
            }
            let start = tuples[x0][s0];
            let mut strand = Vec::new();
            let mut label = start;
            loop {
                visited.insert(label, true);
                let (x, slot) = head_of[&label];
                let (kind, out_slot) = match slot {
                    0 => (PassKind::Under, 2),
                    1 => (PassKind::Over, 3),
                    3 => (PassKind::Over, 1),
                    _ => unreachable!("tail slots are never heads"),
                };
                strand.push(Passage { crossing: x, kind });
                label = tuples[x][out_slot];
                if label == start {
                    break;
                }
            }
            strands.push(strand);
        }
    }
    strands.extend(std::iter::repeat_n(Vec::new(), free_loops));
    Diagram::new(DiagramData { signs, strands }).map_err(NotationError::Structure)
}

/// Writes a diagram as a PD code, one `X[a,b,c,d]` token per crossing in
/// crossing order plus one `O` per free loop. Edges are numbered
/// consecutively along each canonical strand, starting from 1.
pub fn emit_pd(diagram: &Diagram) -> String {
    let strands = diagram.strands();
    let mut arriving: Vec<Vec<usize>> = Vec::with_capacity(strands.len());
    let mut next_label = 1usize;
    for strand in strands {
        arriving.push((0..strand.len()).map(|i| next_label + i).collect());
        next_label += strand.len();
    }
    let mut slots: Vec<[usize; 4]> = vec![[0; 4]; diagram.crossing_count()];
    let mut free_loops = 0usize;
    for (sidx, strand) in strands.iter().enumerate() {
        if strand.is_empty() {
            free_loops += 1;
            continue;
        }
        let len = strand.len();
        for (pos, passage) in strand.iter().enumerate() {
            let edge_in = arriving[sidx][pos];
            let edge_out = arriving[sidx][(pos + 1) % len];
            let tuple = &mut slots[passage.crossing];
            match passage.kind {
                PassKind::Under => {
                    tuple[0] = edge_in;
                    tuple[2] = edge_out;
                }
                PassKind::Over => match diagram.crossings()[passage.crossing].sign {
                    Sign::Positive => {
                        tuple[3] = edge_in;
                        tuple[1] = edge_out;
                    }
                    Sign::Negative => {
                        tuple[1] = edge_in;
                        tuple[3] = edge_out;
                    }
                },
            }
        }
    }
    let mut parts: Vec<String> = slots
        .iter()
        .map(|t| format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3]))
        .collect();
    parts.extend(std::iter::repeat_n("O".to_string(), free_loops));
    parts.join(" ")
}

/// Parses a signed Gauss code. Labels are renumbered densely in order of
/// first appearance; the empty code is the unknot.
pub fn parse_gauss(text: &str) -> Result<Diagram, NotationError> {
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let mut original: Vec<usize> = Vec::new();
    let mut signs: Vec<Sign> = Vec::new();
    let mut seen: Vec<(bool, bool)> = Vec::new();
    let mut strand: Vec<Passage> = Vec::new();
    for token in text.split_whitespace() {
        let mut chars = token.chars();
        let kind = match chars.next() {
            Some('O') => PassKind::Over,
            Some('U') => PassKind::Under,
            _ => return Err(syntax(format!("expected 'O' or 'U' in token {token:?}"))),
        };
        let body: Vec<char> = chars.collect();
        if body.len() < 2 {
            return Err(syntax(format!("token {token:?} is too short")));
        }
        let (digits, sign_char) = body.split_at(body.len() - 1);
        if !digits.iter().all(|c| c.is_ascii_digit()) {
            return Err(syntax(format!("bad crossing label in token {token:?}")));
        }
        let label: usize = digits
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| syntax(format!("crossing label out of range in {token:?}")))?;
        let sign = match sign_char[0] {
            '+' => Sign::Positive,
            '-' => Sign::Negative,
            other => return Err(syntax(format!("expected '+' or '-', found {other:?}"))),
        };
        let id = *ids.entry(label).or_insert_with(|| {
            original.push(label);
            signs.push(sign);
            seen.push((false, false));
            signs.len() - 1
        });
        if signs[id] != sign {
            return Err(NotationError::GaussSignConflict { label });
        }
        let slot = match kind {
            PassKind::Over => &mut seen[id].0,
            PassKind::Under => &mut seen[id].1,
        };
        if *slot {
            return Err(NotationError::GaussLabelCount { label });
        }
        *slot = true;
        strand.push(Passage { crossing: id, kind });
    }
    for (id, &(over, under)) in seen.iter().enumerate() {
        if !(over && under) {
            return Err(NotationError::GaussLabelCount {
                label: original[id],
            });
        }
    }
    Diagram::new(DiagramData {
        signs,
        strands: vec![strand],
    })
    .map_err(NotationError::Structure)
}

/// Writes a single-component diagram as a signed Gauss code, labelling
/// crossings 1, 2, … in order of first appearance along the strand.
pub fn emit_gauss(diagram: &Diagram) -> Result<String, NotationError> {
    if diagram.component_count() != 1 {
        return Err(NotationError::MultiComponent {
            components: diagram.component_count(),
        });
    }
    let mut labels: HashMap<usize, usize> = HashMap::new();
    let mut tokens: Vec<String> = Vec::new();
    for passage in &diagram.strands()[0] {
        let fresh = labels.len() + 1;
        let label = *labels.entry(passage.crossing).or_insert(fresh);
        let kind = match passage.kind {
            PassKind::Over => 'O',
            PassKind::Under => 'U',
        };
        let sign = match diagram.crossings()[passage.crossing].sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        tokens.push(format!("{kind}{label}{sign}"));
    }
    Ok(tokens.join(" "))
}

//! The Conway polynomial by skein recursion, used as an independent
//! oracle for the matrix-based Alexander polynomial.
//!
//! The recursion resolves crossings against a fixed traversal (strands in
//! stored order, passages in order). The pivot is the first crossing whose
//! first passage along the traversal goes under: switching it makes the
//! traversal "more descending", smoothing it removes it. With
//! `∇(L+) − ∇(L−) = z·∇(L0)` this terminates at descending diagrams,
//! which are unknots (one component → 1) or unlinks (more → 0); split
//! diagrams short-circuit to 0. Every switch leaves passage positions
//! untouched, so the descending prefix of the traversal strictly grows and
//! the recursion provably terminates. Results are memoized by canonical
//! diagram data.
//!
//! The Conway variable is written `z`; under `z² = t − 2 + t⁻¹` the
//! polynomial of a knot becomes its Alexander polynomial.

use crate::diagram::{canonicalize, Diagram, DiagramData, PassKind, Sign};
use crate::laurent::LaurentPoly;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConwayError {
    #[error("crossing {index} out of range for a diagram with {count} crossings")]
    CrossingOutOfRange { index: usize, count: usize },
    #[error("exponent {exponent} is odd; only even powers of z convert to Alexander form")]
    OddExponent { exponent: i64 },
    #[error("not a Conway polynomial: {0}")]
    Parse(String),
}

/// A polynomial in the Conway variable `z` with integer coefficients and
/// no negative exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConwayPoly(LaurentPoly);

impl ConwayPoly {
    pub fn zero() -> Self {
        Self(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self(LaurentPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// The underlying coefficients, exponent of `z` encoded as the
    /// exponent of the carrier's variable.
    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }
}

impl fmt::Display for ConwayPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // The carrier renders `t`; the Conway variable is `z`.
        write!(f, "{}", self.0.to_string().replace('t', "z"))
    }
}

impl FromStr for ConwayPoly {
    type Err = ConwayError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains('t') {
            return Err(ConwayError::Parse(format!(
                "expected the variable z, found t in {s:?}"
            )));
        }
        let inner: LaurentPoly = s
            .replace('z', "t")
            .parse()
            .map_err(|e| ConwayError::Parse(format!("{e}")))?;
        if inner.min_exp().is_some_and(|e| e < 0) {
            return Err(ConwayError::Parse(format!("negative powers of z in {s:?}")));
        }
        Ok(Self(inner))
    }
}

/// The diagram with crossing `index` switched: its sign flips and its two
/// passages swap over/under.
pub fn switch_crossing(d: &Diagram, index: usize) -> Result<Diagram, ConwayError> {
    check_index(d, index)?;
    let mut data = d.data().clone();
    switch_in_place(&mut data, index);
    Ok(Diagram::new(data).expect("switching preserves validity"))
}

/// The diagram with crossing `index` smoothed along orientation: the
/// crossing disappears and its two strand segments reconnect in-to-out.
/// Smoothing a self-crossing splits one component in two; smoothing a
/// crossing between two components merges them.
pub fn smooth_crossing(d: &Diagram, index: usize) -> Result<Diagram, ConwayError> {
    check_index(d, index)?;
    let data = smoothed(d.data(), index);
    Ok(Diagram::new(data).expect("smoothing preserves validity"))
}

fn check_index(d: &Diagram, index: usize) -> Result<(), ConwayError> {
    if index >= d.crossing_count() {
        return Err(ConwayError::CrossingOutOfRange {
            index,
            count: d.crossing_count(),
        });
    }
    Ok(())
}

fn switch_in_place(data: &mut DiagramData, index: usize) {
    data.signs[index] = data.signs[index].flipped();
    for strand in &mut data.strands {
        for p in strand {
            if p.crossing == index {
                p.kind = match p.kind {
                    PassKind::Over => PassKind::Under,
                    PassKind::Under => PassKind::Over,
                };
            }
        }
    }
}

fn smoothed(data: &DiagramData, index: usize) -> DiagramData {
    let locations: Vec<(usize, usize)> = data
        .strands
        .iter()
        .enumerate()
        .flat_map(|(s, strand)| {
            strand
                .iter()
                .enumerate()
                .filter(|(_, p)| p.crossing == index)
                .map(move |(pos, _)| (s, pos))
        })
        .collect();
    debug_assert_eq!(locations.len(), 2);

    let mut strands = data.strands.clone();
    let (sa, pa) = locations[0];
    let (sb, pb) = locations[1];
    if sa == sb {
        // Self-crossing: the strand splits into the segment between the
        // two passages and the segment around the outside.
        let strand = &data.strands[sa];
        let inner: Vec<_> = strand[pa + 1..pb].to_vec();
        let outer: Vec<_> = strand[pb + 1..]
            .iter()
            .chain(&strand[..pa])
            .copied()
            .collect();
        strands[sa] = inner;
        strands.push(outer);
    } else {
        // Two components merge: follow the first strand up to the
        // crossing, continue around the whole second strand, come back.
        let first = &data.strands[sa];
        let second = &data.strands[sb];
        let merged: Vec<_> = first[..pa]
            .iter()
            .chain(&second[pb + 1..])
            .chain(&second[..pb])
            .chain(&first[pa + 1..])
            .copied()
            .collect();
        strands[sa] = merged;
        strands.remove(sb);
    }

    let mut signs = data.signs.clone();
    signs.remove(index);
    for strand in &mut strands {
        for p in strand {
            if p.crossing > index {
                p.crossing -= 1;
            }
        }
    }
    DiagramData { signs, strands }
}

/// The Conway polynomial of any diagram, links included.
pub fn conway_polynomial(d: &Diagram) -> ConwayPoly {
    conway_with_expansion_count(d).0
}

/// [`conway_polynomial`] along with the number of skein expansions
/// performed; the recursion is guarded to expand at most `2^c` nodes for a
/// `c`-crossing diagram.
pub fn conway_with_expansion_count(d: &Diagram) -> (ConwayPoly, u64) {
    let budget = 1u64 << d.crossing_count().min(40);
    let mut memo = HashMap::new();
    let mut expansions = 0;
    let value = eval(d.data().clone(), &mut memo, &mut expansions, budget);
    (ConwayPoly(value), expansions)
}

fn eval(
    data: DiagramData,
    memo: &mut HashMap<DiagramData, LaurentPoly>,
    expansions: &mut u64,
    budget: u64,
) -> LaurentPoly {
    if data.signs.is_empty() {
        return if data.strands.len() == 1 {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        };
    }
    if is_split(&data) {
        return LaurentPoly::zero();
    }
    let pivot = match first_crossing_met_under(&data) {
        Some(crossing) => crossing,
        // Descending: every crossing is first met over, so the diagram is
        // a trivial knot or unlink.
        None => {
            return if data.strands.len() == 1 {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            };
        }
    };

    let mut key = data.clone();
    canonicalize(&mut key);
    if let Some(value) = memo.get(&key) {
        return value.clone();
    }

    *expansions += 1;
    assert!(
        *expansions <= budget,
        "skein recursion exceeded its node budget of {budget} expansions"
    );

    let sign = data.signs[pivot];
    let mut switched = data.clone();
    switch_in_place(&mut switched, pivot);
    let smoothed_data = smoothed(&data, pivot);

    let switched_value = eval(switched, memo, expansions, budget);
    let smoothed_value = eval(smoothed_data, memo, expansions, budget);
    let z_term = &LaurentPoly::t() * &smoothed_value;
    let value = match sign {
        Sign::Positive => &switched_value + &z_term,
        Sign::Negative => &switched_value - &z_term,
    };
    memo.insert(key, value.clone());
    value
}

fn first_crossing_met_under(data: &DiagramData) -> Option<usize> {
    let mut seen = vec![false; data.signs.len()];
    for strand in &data.strands {
        for p in strand {
            if !seen[p.crossing] {
                seen[p.crossing] = true;
                if p.kind == PassKind::Under {
                    return Some(p.crossing);
                }
            }
        }
    }
    None
}

fn is_split(data: &DiagramData) -> bool {
    let n = data.strands.len();
    if n <= 1 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut first_strand = vec![usize::MAX; data.signs.len()];
    for (s, strand) in data.strands.iter().enumerate() {
        for p in strand {
            if first_strand[p.crossing] == usize::MAX {
                first_strand[p.crossing] = s;
            } else {
                let (a, b) = (
                    root(&mut parent, first_strand[p.crossing]),
                    root(&mut parent, s),
                );
                parent[a] = b;
            }
        }
    }
    let anchor = root(&mut parent, 0);
    (1..n).any(|s| root(&mut parent, s) != anchor)
}

/// Substitutes `z² = t − 2 + t⁻¹` and normalizes, turning the Conway
/// polynomial of a knot into its Alexander polynomial in canonical unit
/// form. Odd powers of `z` (which belong to even-component links) are
/// rejected.
pub fn conway_to_alexander(p: &ConwayPoly) -> Result<LaurentPoly, ConwayError> {
    if p.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    for (exp, _) in p.0.terms() {
        if exp % 2 != 0 {
            return Err(ConwayError::OddExponent { exponent: exp });
        }
    }
    let substitution = {
        let t: LaurentPoly = LaurentPoly::t();
        let minus_two = LaurentPoly::constant(-2);
        let t_inverse = LaurentPoly::monomial(-1, 1);
        &(&t + &minus_two) + &t_inverse
    };
    let mut result = LaurentPoly::zero();
    let mut power = LaurentPoly::one();
    let mut power_exp = 0;
    for (exp, coeff) in p.0.terms() {
        let k = exp / 2;
        while power_exp < k {
            power = &power * &substitution;
            power_exp += 1;
        }
        result = &result + &power.scaled(coeff);
    }
    Ok(result
        .normalize_units()
        .expect("an even nonzero Conway polynomial maps to a nonzero polynomial"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Passage;
    use crate::notation::parse_pd;

    fn o(c: usize) -> Passage {
        Passage::over(c)
    }

    fn u(c: usize) -> Passage {
        Passage::under(c)
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

    fn z(s: &str) -> ConwayPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_and_parse_round_trip() {
        for text in ["0", "1", "1 + z^2", "-z + z^3", "2z^2"] {
            assert_eq!(z(text).to_string(), text);
        }
        assert!("1 + t".parse::<ConwayPoly>().is_err());
        assert!("z^-1".parse::<ConwayPoly>().is_err());
    }

    #[test]
    fn unknots_and_unlinks() {
        assert!(conway_polynomial(&Diagram::unknot()).is_one());
        let two_loops = Diagram::from_parts(vec![], vec![vec![], vec![]]).unwrap();
        assert!(conway_polynomial(&two_loops).is_zero());
        let kink = Diagram::from_parts(vec![Sign::Positive], vec![vec![o(0), u(0)]]).unwrap();
        let (value, expansions) = conway_with_expansion_count(&kink);
        assert!(value.is_one());
        assert_eq!(expansions, 0, "a descending kink needs no expansion");
    }

    #[test]
    fn trefoil_and_figure_eight_values() {
        let (value, expansions) = conway_with_expansion_count(&trefoil());
        assert_eq!(value, z("1 + z^2"));
        assert!(expansions <= 8);
        assert_eq!(conway_polynomial(&figure_eight()), z("1 - z^2"));
    }

    #[test]
    fn double_kink_is_trivial() {
        let d = Diagram::from_parts(vec![Sign::Positive; 2], vec![vec![o(0), u(0), o(1), u(1)]])
            .unwrap();
        assert!(conway_polynomial(&d).is_one());
    }

    #[test]
    fn switching_is_an_involution_and_untangles_the_trefoil() {
        let d = trefoil();
        for i in 0..3 {
            let switched = switch_crossing(&d, i).unwrap();
            assert_eq!(switched.writhe(), d.writhe() - 2);
            assert_eq!(switch_crossing(&switched, i).unwrap(), d);
            assert!(conway_polynomial(&switched).is_one());
        }
    }

    #[test]
    fn smoothing_a_trefoil_crossing_gives_a_two_component_link() {
        let d = trefoil();
        for i in 0..3 {
            let smoothed = smooth_crossing(&d, i).unwrap();
            assert_eq!(smoothed.crossing_count(), 2);
            assert_eq!(smoothed.component_count(), 2);
            assert_eq!(conway_polynomial(&smoothed), z("z"));
        }
    }

    #[test]
    fn skein_identity_on_every_trefoil_crossing() {
        let d = trefoil();
        for i in 0..3 {
            let plus = conway_polynomial(&d);
            let minus = conway_polynomial(&switch_crossing(&d, i).unwrap());
            let smooth = conway_polynomial(&smooth_crossing(&d, i).unwrap());
            let lhs = plus.as_laurent() - minus.as_laurent();
            let rhs = &LaurentPoly::t() * smooth.as_laurent();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exponent_parity_matches_component_count() {
        // Knots carry even powers only, two-component links odd only.
        for (exp, _) in conway_polynomial(&figure_eight()).as_laurent().terms() {
            assert_eq!(exp % 2, 0);
        }
        let link = smooth_crossing(&trefoil(), 0).unwrap();
        for (exp, _) in conway_polynomial(&link).as_laurent().terms() {
            assert_eq!(exp % 2, 1);
        }
    }

    #[test]
    fn conversion_to_alexander_form() {
        assert_eq!(
            conway_to_alexander(&z("1 + z^2")).unwrap(),
            "1 - t + t^2".parse().unwrap()
        );
        assert_eq!(
            conway_to_alexander(&z("1 - z^2")).unwrap(),
            "1 - 3t + t^2".parse().unwrap()
        );
        assert_eq!(
            conway_to_alexander(&ConwayPoly::zero()).unwrap(),
            LaurentPoly::zero()
        );
        assert_eq!(
            conway_to_alexander(&z("z")),
            Err(ConwayError::OddExponent { exponent: 1 })
        );
    }

    #[test]
    fn out_of_range_crossings_are_rejected() {
        assert_eq!(
            switch_crossing(&trefoil(), 3),
            Err(ConwayError::CrossingOutOfRange { index: 3, count: 3 })
        );
        assert_eq!(
            smooth_crossing(&Diagram::unknot(), 0),
            Err(ConwayError::CrossingOutOfRange { index: 0, count: 0 })
        );
    }
}

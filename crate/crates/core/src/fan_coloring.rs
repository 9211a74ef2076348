//! The two constructive building blocks behind every coloring here.
//!
//! [`color_fan`] colors any fan into the tournament with the root at 0 and
//! both endpoint leaves nonzero, recursing on the root's sons. [`compose_fans`]
//! joins two such colored fans across a root-root arc and a leaf-leaf arc and
//! returns two colorings that agree with the first fan's coloring everywhere
//! on the first fan but differ on the composed fan's last leaf. That one bit
//! of slack is what every case of the main construction spends.
//!
//! The composition works by normalizing: reverse-and-negate until the
//! root-root arc runs first-to-second, multiply each fan's coloring so the
//! two endpoint colors land in `{1, 3}`, then read the pair of automorphisms
//! to apply to the second fan off an eight-line table. One line of the table
//! needs a second look: with endpoints (3, 1) and a forward link arc, the
//! pair is `x+4` and `2x+2`, and when the second fan's last leaf carries
//! (normalized) color 2 the second map is replaced by `4x+1`, the only affine
//! map with scale 4 that keeps the link arc valid and still separates the
//! last leaf.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::halin::Fan;
use crate::tournament::{self, t7_arc, AffineMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("fan root {root} is colored {color}, expected 0")]
    RootNotZero { root: usize, color: u8 },
    #[error("endpoint leaf {leaf} is colored 0")]
    EndpointZero { leaf: usize },
    #[error("coloring misses fan vertex {vertex}")]
    MissingVertex { vertex: usize },
    #[error("vertex {vertex} carries color {color}, outside the tournament")]
    NotTournamentColor { vertex: usize, color: u8 },
    #[error("coloring breaks the tournament arc condition on arc {arc:?}")]
    NotHomomorphism { arc: (usize, usize) },
    #[error("the two fans share vertex {vertex}")]
    OverlappingFans { vertex: usize },
    #[error("endpoint color 0 cannot be normalized")]
    NormalizeZero,
}

// ============================================================================
// FanColoring
// ============================================================================

/// A coloring of a fan's vertices into the tournament, keyed by the original
/// vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanColoring {
    colors: BTreeMap<usize, u8>,
}

impl FanColoring {
    pub fn new(colors: BTreeMap<usize, u8>) -> Self {
        Self { colors }
    }

    pub fn color(&self, v: usize) -> u8 {
        self.colors[&v]
    }

    pub fn colors(&self) -> &BTreeMap<usize, u8> {
        &self.colors
    }

    /// Checks the fan-coloring contract: total on the fan, colors in the
    /// tournament, root 0, endpoint leaves nonzero, every fan arc valid.
    pub fn check(&self, fan: &Fan) -> Result<(), CompositionError> {
        for v in fan.members() {
            match self.colors.get(&v) {
                None => return Err(CompositionError::MissingVertex { vertex: v }),
                Some(&c) if c > 6 => {
                    return Err(CompositionError::NotTournamentColor { vertex: v, color: c })
                }
                _ => {}
            }
        }
        let root_color = self.color(fan.root());
        if root_color != 0 {
            return Err(CompositionError::RootNotZero { root: fan.root(), color: root_color });
        }
        for leaf in [fan.first_leaf(), fan.last_leaf()] {
            if self.color(leaf) == 0 {
                return Err(CompositionError::EndpointZero { leaf });
            }
        }
        for (u, v) in fan.arcs() {
            if !t7_arc(self.color(u), self.color(v)) {
                return Err(CompositionError::NotHomomorphism { arc: (u, v) });
            }
        }
        Ok(())
    }
}

/// The two colorings of a composition. Both restrict to the first fan's
/// coloring; they differ on the composed fan's last leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionResult {
    pub alternatives: [BTreeMap<usize, u8>; 2],
}

// ============================================================================
// Composition (two colorings from two colored fans)
// ============================================================================

/// `(first endpoint, second endpoint, link forward)` plus the two
/// automorphism `(scale, offset)` pairs for that line.
type TableRow = (u8, u8, bool, (u8, u8), (u8, u8));

/// The `(3, 1, forward)` line is handled separately.
const NORMALIZED_TABLE: [TableRow; 7] = [
    (1, 1, true, (1, 1), (1, 2)),
    (1, 1, false, (2, 2), (2, 4)),
    (1, 3, true, (2, 4), (4, 4)),
    (1, 3, false, (1, 1), (1, 4)),
    (3, 1, false, (4, 2), (4, 4)),
    (3, 3, true, (1, 1), (1, 2)),
    (3, 3, false, (4, 1), (4, 4)),
];

/// The automorphism pair for normalized endpoint colors `u0, v0` in `{1, 3}`
/// and the (normalized) color `y0` of the second fan's last leaf.
fn normalized_pair(u0: u8, v0: u8, y0: u8, link_forward: bool) -> ((u8, u8), (u8, u8)) {
    if (u0, v0, link_forward) == (3, 1, true) {
        let second = if y0 == 2 { (4, 1) } else { (2, 2) };
        return ((1, 4), second);
    }
    NORMALIZED_TABLE
        .iter()
        .find(|&&(a, b, f, _, _)| (a, b, f) == (u0, v0, link_forward))
        .map(|&(_, _, _, p1, p2)| (p1, p2))
        .expect("normalized endpoints are in {1, 3}")
}

/// The automorphism pair for arbitrary nonzero endpoint colors, assuming the
/// root arc already runs first-root to second-root.
fn automorphism_pair(u: u8, v: u8, y: u8, link_forward: bool) -> (AffineMap, AffineMap) {
    let m1 = tournament::normalizing_multiplier(u).expect("first endpoint is nonzero");
    let m2 = tournament::normalizing_multiplier(v).expect("second endpoint is nonzero");
    let (u0, v0, y0) = ((m1 * u) % 7, (m2 * v) % 7, (m2 * y) % 7);
    let (p1, p2) = normalized_pair(u0, v0, y0, link_forward);
    let m1_inv = tournament::mul_inverse(m1).expect("residues are invertible");
    let lift = |(scale, offset): (u8, u8)| {
        AffineMap::new((m1_inv * scale % 7) * m2 % 7, m1_inv * offset % 7)
            .expect("residues are closed under products")
    };
    (lift(p1), lift(p2))
}

/// `x -> a x + b` conjugated by negation: the map to use on the original
/// colors when the pair was computed for the negated, arc-reversed problem.
fn conjugate_by_negation(map: AffineMap) -> AffineMap {
    AffineMap::new(map.scale(), (7 - map.offset()) % 7).expect("scale unchanged")
}

/// Colors the composition of two colored fans.
///
/// `root_arc_forward` says the joining arc runs from `first`'s root to
/// `second`'s root; `link_arc_forward` says the leaf arc runs from `first`'s
/// last leaf to `second`'s first leaf. The result's two colorings both equal
/// `c1` on the first fan and differ on `second`'s last leaf; both are valid
/// on every arc of both fans plus the two joining arcs.
pub fn compose_fans(
    first: &Fan,
    c1: &FanColoring,
    second: &Fan,
    c2: &FanColoring,
    root_arc_forward: bool,
    link_arc_forward: bool,
) -> Result<CompositionResult, CompositionError> {
    c1.check(first)?;
    c2.check(second)?;
    if let Some(v) = second.members().find(|&v| first.contains(v)) {
        return Err(CompositionError::OverlappingFans { vertex: v });
    }

    let u = c1.color(first.last_leaf());
    let v = c2.color(second.first_leaf());
    let y = c2.color(second.last_leaf());
    let (phi1, phi2) = if root_arc_forward {
        automorphism_pair(u, v, y, link_arc_forward)
    } else {
        let neg = tournament::negate_color;
        let (p1, p2) = automorphism_pair(neg(u), neg(v), neg(y), !link_arc_forward);
        (conjugate_by_negation(p1), conjugate_by_negation(p2))
    };

    let build = |phi: &AffineMap| -> BTreeMap<usize, u8> {
        let mut d = c1.colors().clone();
        for (&w, &c) in c2.colors() {
            d.insert(w, phi.apply(c));
        }
        d
    };
    let result = CompositionResult {
        alternatives: [build(&phi1), build(&phi2)],
    };

    // Composition is total for valid inputs; a failure is a bug, so dump
    // and abort.
    let mut arcs = first.arcs();
    arcs.extend(second.arcs());
    arcs.push(if root_arc_forward {
        (first.root(), second.root())
    } else {
        (second.root(), first.root())
    });
    arcs.push(if link_arc_forward {
        (first.last_leaf(), second.first_leaf())
    } else {
        (second.first_leaf(), first.last_leaf())
    });
    for d in &result.alternatives {
        for &(a, b) in &arcs {
            if !t7_arc(d[&a], d[&b]) {
                panic!(
                    "composition produced an invalid arc ({a}, {b}) colored ({}, {}); \
                     endpoints ({u}, {v}, {y}), root arc forward {root_arc_forward}, \
                     link arc forward {link_arc_forward}, maps {phi1} / {phi2}",
                    d[&a], d[&b]
                );
            }
        }
    }
    let ll = second.last_leaf();
    assert_ne!(
        result.alternatives[0][&ll], result.alternatives[1][&ll],
        "composition failed to separate the last leaf; endpoints ({u}, {v}, {y})"
    );
    Ok(result)
}

/// Which end of a fan to normalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanEnd {
    First,
    Last,
}

/// Multiplies all colors by the residue that moves the chosen endpoint color
/// into `{1, 3}`. Returns the rescaled coloring and the multiplier.
pub fn normalize_endpoint(
    fan: &Fan,
    coloring: &FanColoring,
    which: FanEnd,
) -> Result<(FanColoring, u8), CompositionError> {
    let leaf = match which {
        FanEnd::First => fan.first_leaf(),
        FanEnd::Last => fan.last_leaf(),
    };
    let m = tournament::normalizing_multiplier(coloring.color(leaf))
        .ok_or(CompositionError::NormalizeZero)?;
    let scaled = coloring
        .colors()
        .iter()
        .map(|(&v, &c)| (v, (m * c) % 7))
        .collect();
    Ok((FanColoring::new(scaled), m))
}

// ============================================================================
// Recursive fan coloring
// ============================================================================

/// Colors a fan into the tournament with root color 0 and nonzero colors on
/// the first and last leaf. Total for every fan; an internal failure is a
/// bug and panics with a diagnostic.
pub fn color_fan(fan: &Fan) -> FanColoring {
    let coloring = FanColoring::new(color_fan_inner(fan));
    if let Err(e) = coloring.check(fan) {
        panic!("fan coloring construction failed: {e}; fan {fan:?}");
    }
    coloring
}

fn color_fan_inner(fan: &Fan) -> BTreeMap<usize, u8> {
    if fan.node_count() == 2 {
        let leaf = fan.first_leaf();
        let color = if fan.edge_down_of(leaf) { 1 } else { 3 };
        return BTreeMap::from([(fan.root(), 0), (leaf, color)]);
    }
    let sons = fan.root_sons();
    if sons.len() == 1 {
        // The single son is interior: color its fan, then shift everything
        // by the smallest constant that keeps the root arc valid and both
        // endpoint leaves nonzero. At most two of the three shifts collide
        // with an endpoint, so one always survives.
        let (sub, down) = fan.descend_to_single_child();
        let inner = color_fan_inner(&sub);
        let shifts: [u8; 3] = if down { [1, 2, 4] } else { [3, 5, 6] };
        let fl = inner[&fan.first_leaf()];
        let ll = inner[&fan.last_leaf()];
        let b = shifts
            .into_iter()
            .find(|&b| !(fl + b).is_multiple_of(7) && !(ll + b).is_multiple_of(7))
            .expect("a shift always survives the two endpoint constraints");
        let mut out: BTreeMap<usize, u8> =
            inner.into_iter().map(|(v, c)| (v, (c + b) % 7)).collect();
        out.insert(fan.root(), 0);
        return out;
    }
    let &last = sons.last().unwrap();
    if fan.is_leaf(last) {
        // Peel the last leaf son; it only touches the root (color 0) and the
        // previous leaf, and those two constraint sets always intersect.
        let rest = fan.without_last_leaf_son();
        let mut out = color_fan_inner(&rest);
        let prev_color = out[&rest.last_leaf()];
        let root_down = fan.edge_down_of(last);
        let path_forward = *fan.path_directions().last().unwrap();
        let color = (1..=6u8)
            .find(|&c| {
                let root_ok = if root_down { t7_arc(0, c) } else { t7_arc(c, 0) };
                let path_ok = if path_forward {
                    t7_arc(prev_color, c)
                } else {
                    t7_arc(c, prev_color)
                };
                root_ok && path_ok
            })
            .expect("the two 3-element constraint sets always intersect");
        out.insert(last, color);
        return out;
    }
    // The last son is interior: split it off, color both parts, compose, and
    // keep whichever alternative leaves the last leaf nonzero.
    let (rest, sub, root_arc_forward, link_arc_forward) = fan.split_last_son();
    let c1 = FanColoring::new(color_fan_inner(&rest));
    let c2 = FanColoring::new(color_fan_inner(&sub));
    let composed = compose_fans(&rest, &c1, &sub, &c2, root_arc_forward, link_arc_forward)
        .expect("recursive fan colorings satisfy the composition contract");
    let ll = fan.last_leaf();
    let [a, b] = composed.alternatives;
    if a[&ll] != 0 {
        a
    } else {
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halin::{enumerate_halin, fan_from_cycle_arc_removal, star_halin};

    /// A root-plus-one-leaf fan whose leaf carries `color`; ids `base`,
    /// `base + 1`. The tree arc direction is chosen to fit the color.
    fn leaf_fan(base: usize, color: u8) -> (Fan, FanColoring) {
        assert!(color != 0);
        let down = t7_arc(0, color);
        let children = BTreeMap::from([(base, vec![base + 1])]);
        let edge_down = BTreeMap::from([(base + 1, down)]);
        let fan = Fan::new(base, children, edge_down, vec![]).unwrap();
        let coloring = FanColoring::new(BTreeMap::from([(base, 0), (base + 1, color)]));
        (fan, coloring)
    }

    /// A root-plus-two-leaves fan colored (0, first, last); ids `base..base+3`.
    fn two_leaf_fan(base: usize, first: u8, last: u8) -> (Fan, FanColoring) {
        assert!(first != 0 && last != 0 && first != last);
        let children = BTreeMap::from([(base, vec![base + 1, base + 2])]);
        let edge_down = BTreeMap::from([
            (base + 1, t7_arc(0, first)),
            (base + 2, t7_arc(0, last)),
        ]);
        let fan = Fan::new(base, children, edge_down, vec![t7_arc(first, last)]).unwrap();
        let coloring = FanColoring::new(BTreeMap::from([
            (base, 0),
            (base + 1, first),
            (base + 2, last),
        ]));
        (fan, coloring)
    }

    /// A second fan realizing first-leaf color `v` and last-leaf color `y`.
    fn second_fan(base: usize, v: u8, y: u8) -> (Fan, FanColoring) {
        if v == y {
            leaf_fan(base, v)
        } else {
            two_leaf_fan(base, v, y)
        }
    }

    type RowExpectation = ((u8, u8, bool), [(u8, u8); 2]);

    #[test]
    fn table_rows_reproduce_the_link_arc_colors() {
        // (u0, v0, forward) -> expected link colors under the two maps,
        // written tail-to-head along the actual arc.
        let expected: [RowExpectation; 8] = [
            ((1, 1, true), [(1, 2), (1, 3)]),
            ((1, 1, false), [(4, 1), (6, 1)]),
            ((1, 3, true), [(1, 3), (1, 2)]),
            ((1, 3, false), [(4, 1), (0, 1)]),
            ((3, 1, true), [(3, 5), (3, 4)]),
            ((3, 1, false), [(6, 3), (1, 3)]),
            ((3, 3, true), [(3, 4), (3, 5)]),
            ((3, 3, false), [(6, 3), (2, 3)]),
        ];
        for ((u0, v0, fwd), want) in expected {
            let (f1, c1) = leaf_fan(0, u0);
            let (f2, c2) = second_fan(10, v0, v0);
            let res = compose_fans(&f1, &c1, &f2, &c2, true, fwd).unwrap();
            for (d, (tail, head)) in res.alternatives.iter().zip(want) {
                let (a, b) = if fwd {
                    (f1.last_leaf(), f2.first_leaf())
                } else {
                    (f2.first_leaf(), f1.last_leaf())
                };
                assert_eq!(
                    (d[&a], d[&b]),
                    (tail, head),
                    "row ({u0}, {v0}, {fwd})"
                );
            }
        }
    }

    #[test]
    fn separately_considered_row_swaps_the_second_map() {
        // Endpoints (3, 1), forward link, second fan's last leaf colored 2.
        let (f1, c1) = leaf_fan(0, 3);
        let (f2, c2) = second_fan(10, 1, 2);
        let res = compose_fans(&f1, &c1, &f2, &c2, true, true).unwrap();
        let ll = f2.last_leaf();
        // First map x+4 sends 2 to 6; the replacement 4x+1 sends 2 to 2.
        assert_eq!(res.alternatives[0][&ll], 6);
        assert_eq!(res.alternatives[1][&ll], 2);
        // Link arc stays valid under both.
        let (a, b) = (f1.last_leaf(), f2.first_leaf());
        assert_eq!((res.alternatives[0][&a], res.alternatives[0][&b]), (3, 5));
        assert_eq!((res.alternatives[1][&a], res.alternatives[1][&b]), (3, 5));
    }

    #[test]
    fn table_rows_separate_every_nonzero_color() {
        for &(_, _, _, p1, p2) in &NORMALIZED_TABLE {
            let f1 = AffineMap::new(p1.0, p1.1).unwrap();
            let f2 = AffineMap::new(p2.0, p2.1).unwrap();
            for x in 1..7 {
                assert_ne!(f1.apply(x), f2.apply(x), "{f1} vs {f2} at {x}");
            }
        }
        // The separately-considered line separates whichever color the
        // second fan's last leaf actually carries.
        for y0 in 1..7 {
            let (p1, p2) = normalized_pair(3, 1, y0, true);
            let f1 = AffineMap::new(p1.0, p1.1).unwrap();
            let f2 = AffineMap::new(p2.0, p2.1).unwrap();
            assert_ne!(f1.apply(y0), f2.apply(y0), "y0 = {y0}");
        }
    }

    #[test]
    fn composition_sweep_over_a_direction_slice() {
        // The full 1728-configuration sweep lives in the acceptance suite;
        // this covers one direction pair across all endpoint colors.
        for u in 1..7u8 {
            for v in 1..7u8 {
                for y in 1..7u8 {
                    let (f1, c1) = leaf_fan(0, u);
                    let (f2, c2) = second_fan(10, v, y);
                    let res = compose_fans(&f1, &c1, &f2, &c2, false, true).unwrap();
                    for d in &res.alternatives {
                        assert_eq!(d[&0], 0);
                        assert_eq!(d[&f1.last_leaf()], u);
                    }
                }
            }
        }
    }

    #[test]
    fn composition_rejects_bad_inputs() {
        let (f1, c1) = leaf_fan(0, 1);
        let (f2, c2) = leaf_fan(0, 1);
        assert_eq!(
            compose_fans(&f1, &c1, &f2, &c2, true, true).unwrap_err(),
            CompositionError::OverlappingFans { vertex: 0 }
        );
        let (f2, _) = leaf_fan(10, 1);
        let bad = FanColoring::new(BTreeMap::from([(10, 0), (11, 0)]));
        assert_eq!(
            compose_fans(&f1, &c1, &f2, &bad, true, true).unwrap_err(),
            CompositionError::EndpointZero { leaf: 11 }
        );
        let bad_root = FanColoring::new(BTreeMap::from([(10, 2), (11, 3)]));
        assert_eq!(
            compose_fans(&f1, &c1, &f2, &bad_root, true, true).unwrap_err(),
            CompositionError::RootNotZero { root: 10, color: 2 }
        );
    }

    #[test]
    fn normalize_endpoint_examples() {
        let (fan, coloring) = leaf_fan(0, 4);
        let (scaled, m) = normalize_endpoint(&fan, &coloring, FanEnd::Last).unwrap();
        assert_eq!(m, 2);
        assert_eq!(scaled.color(1), 1);
        assert_eq!(scaled.color(0), 0);

        let (fan, coloring) = leaf_fan(0, 1);
        let (scaled, m) = normalize_endpoint(&fan, &coloring, FanEnd::First).unwrap();
        assert_eq!(m, 1);
        assert_eq!(scaled, coloring);

        let (fan, coloring) = leaf_fan(0, 6);
        let (scaled, m) = normalize_endpoint(&fan, &coloring, FanEnd::Last).unwrap();
        assert_eq!(m, 4);
        assert_eq!(scaled.color(1), 3);
    }

    #[test]
    fn two_vertex_fans_use_the_smallest_fitting_color() {
        let children = BTreeMap::from([(0usize, vec![1usize])]);
        let down = Fan::new(0, children.clone(), BTreeMap::from([(1, true)]), vec![]).unwrap();
        let c = color_fan(&down);
        assert_eq!(c.color(0), 0);
        assert!([1, 2, 4].contains(&c.color(1)));

        let up = Fan::new(0, children, BTreeMap::from([(1, false)]), vec![]).unwrap();
        let c = color_fan(&up);
        assert_eq!(c.color(0), 0);
        assert!([3, 5, 6].contains(&c.color(1)));
    }

    #[test]
    fn color_fan_is_deterministic() {
        let h = star_halin(5);
        let fan = fan_from_cycle_arc_removal(&h, 0, 2).unwrap();
        assert_eq!(color_fan(&fan), color_fan(&fan));
    }

    #[test]
    fn every_fan_from_small_instances_colors_cleanly() {
        // Fans from all 4-leaf instances; the 5-leaf sweep is acceptance
        // criterion 4. color_fan panics on any internal failure, and the
        // returned coloring re-checks the full contract.
        let mut fans = 0usize;
        for h in enumerate_halin(4) {
            for gap in 0..h.exterior_count() {
                for root in h.tree().interior_preorder() {
                    if let Ok(fan) = fan_from_cycle_arc_removal(&h, root, gap) {
                        let coloring = color_fan(&fan);
                        coloring.check(&fan).unwrap();
                        fans += 1;
                    }
                }
            }
        }
        assert!(fans > 0);
    }
}

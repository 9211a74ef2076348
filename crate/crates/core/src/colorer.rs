//! The main construction: route an oriented Halin graph to the right case
//! and emit a verified coloring with at most 8 colors.
//!
//! Dispatch, in order: up to five exterior vertices get the disjoint-palette
//! treatment; a cycle with mixed arc directions loses one head-to-head
//! vertex to color 7; a uniformly directed cycle goes through the fan
//! machinery at a deepest interior vertex (four sub-cases on its spoke
//! directions), or, with a single interior vertex, either a cheap
//! directed-cycle pattern or the same turn construction.
//!
//! A uniformly backward cycle is first normalized by reflecting the
//! embedding; that changes no arc and no vertex id, so the coloring carries
//! straight back.
//!
//! Every case ends with a full-graph verification. Each construction is
//! total on its case, so a verification failure is a bug and panics with
//! the instance serialized for a report.

use thiserror::Error;

use crate::fan_coloring::{color_fan, compose_fans};
use crate::graph::{verify_oriented_coloring, Coloring, Verdict};
use crate::halin::{
    fan_after_removals, fan_from_cycle_arc_removal, fan_from_cycle_vertex_removal, fan_split,
    to_json, HalinError, OrientedHalin,
};
use crate::tournament::t7_arc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error(transparent)]
    Invalid(#[from] HalinError),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Which construction colored the instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    SmallCycle,
    MixedCycle,
    InteriorK1,
    InteriorForwardRoot,
    InteriorBackwardRoot,
    InteriorTurn,
    SingleInteriorUniform,
    SingleInteriorTurn,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::SmallCycle => "small-cycle",
            CaseTag::MixedCycle => "mixed-cycle",
            CaseTag::InteriorK1 => "interior-k1",
            CaseTag::InteriorForwardRoot => "interior-forward-root",
            CaseTag::InteriorBackwardRoot => "interior-backward-root",
            CaseTag::InteriorTurn => "interior-turn",
            CaseTag::SingleInteriorUniform => "single-interior-uniform",
            CaseTag::SingleInteriorTurn => "single-interior-turn",
        }
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct HalinColoring {
    pub coloring: Coloring,
    pub case: CaseTag,
    /// True when the turn construction had to fall back to bounded local
    /// repair instead of the three analytic branches.
    pub used_case4_fallback: bool,
}

/// Colors any valid oriented Halin graph with at most 8 colors, color 7 on
/// at most one vertex, and returns the case taken.
pub fn color_halin(h: &OrientedHalin) -> Result<HalinColoring, ColorError> {
    h.validate()?;
    let result = dispatch(h)?;
    debug_assert!(result.coloring.distinct_colors() <= 8);
    debug_assert!(result.coloring.count_of(7) <= 1);
    Ok(result)
}

fn dispatch(h: &OrientedHalin) -> Result<HalinColoring, ColorError> {
    if h.exterior_count() <= 5 {
        return Ok(HalinColoring {
            coloring: color_small_cycle(h)?,
            case: CaseTag::SmallCycle,
            used_case4_fallback: false,
        });
    }
    let forward = h.cycle_directions().iter().filter(|&&d| d).count();
    if forward != 0 && forward != h.exterior_count() {
        return Ok(HalinColoring {
            coloring: color_mixed_cycle(h)?,
            case: CaseTag::MixedCycle,
            used_case4_fallback: false,
        });
    }
    let normalized;
    let hh = if forward == h.exterior_count() {
        h
    } else {
        normalized = h.mirrored();
        &normalized
    };

    if hh.interior_count() >= 2 {
        let r = hh.lowest_interior().expect("two interior vertices leave a non-root one");
        let sons = hh.tree().children_of(r);
        let k = sons.len();
        if k == 1 {
            return Ok(HalinColoring {
                coloring: color_interior_case1(hh, r)?,
                case: CaseTag::InteriorK1,
                used_case4_fallback: false,
            });
        }
        if hh.edge_down(sons[0]) {
            return Ok(HalinColoring {
                coloring: color_interior_case2(hh, r)?,
                case: CaseTag::InteriorForwardRoot,
                used_case4_fallback: false,
            });
        }
        if !hh.edge_down(sons[k - 1]) {
            return Ok(HalinColoring {
                coloring: color_interior_case3(hh, r)?,
                case: CaseTag::InteriorBackwardRoot,
                used_case4_fallback: false,
            });
        }
        let turn = (0..k - 1)
            .find(|&j| !hh.edge_down(sons[j]) && hh.edge_down(sons[j + 1]))
            .expect("spokes that rise at the first son and fall at the last have a turn");
        let gap = hh.leaf_position(sons[turn]).expect("sons are exterior");
        let (coloring, fallback) = color_interior_case4(hh, r, gap)?;
        return Ok(HalinColoring {
            coloring,
            case: CaseTag::InteriorTurn,
            used_case4_fallback: fallback,
        });
    }

    // Single interior vertex: the tree root carries every leaf.
    let spokes_down = hh.leaf_order().iter().filter(|&&v| hh.edge_down(v)).count();
    if spokes_down == 0 || spokes_down == hh.exterior_count() {
        return Ok(HalinColoring {
            coloring: color_single_interior_uniform(hh)?,
            case: CaseTag::SingleInteriorUniform,
            used_case4_fallback: false,
        });
    }
    let m = hh.exterior_count();
    let gap = (0..m)
        .find(|&j| {
            !hh.edge_down(hh.leaf_order()[j]) && hh.edge_down(hh.leaf_order()[(j + 1) % m])
        })
        .expect("mixed spokes have a turn");
    let (coloring, fallback) = color_interior_case4(hh, hh.tree().root(), gap)?;
    Ok(HalinColoring {
        coloring,
        case: CaseTag::SingleInteriorTurn,
        used_case4_fallback: fallback,
    })
}

/// Full-graph verification gate. The constructions are total, so a
/// failure aborts with the instance attached.
fn must_verify(h: &OrientedHalin, colors: Vec<u8>, case: &str) -> Coloring {
    let coloring = Coloring::new(colors).expect("constructions stay within the palette");
    match verify_oriented_coloring(&h.to_graph(), &coloring) {
        Ok(Verdict::Valid) => coloring,
        Ok(Verdict::Invalid(violation)) => panic!(
            "{case} produced an invalid coloring ({violation}); \
             coloring {:?}; instance {}",
            coloring.as_slice(),
            to_json(h)
        ),
        Err(e) => panic!("{case} produced a malformed coloring ({e}); instance {}", to_json(h)),
    }
}

/// Verifier-gated attempt used where the construction picks among a few
/// candidate assignments.
fn try_colors(h: &OrientedHalin, colors: Vec<u8>) -> Option<Coloring> {
    let coloring = Coloring::new(colors).ok()?;
    match verify_oriented_coloring(&h.to_graph(), &coloring) {
        Ok(Verdict::Valid) => Some(coloring),
        _ => None,
    }
}

/// Colors the candidate vertex can take across the arc toward (or from) a
/// vertex colored `from`, in increasing order.
fn fitting_colors(from: u8, arc_toward_candidate: bool) -> Vec<u8> {
    let mut out: Vec<u8> = (0..7)
        .filter(|&c| {
            if arc_toward_candidate {
                t7_arc(from, c)
            } else {
                t7_arc(c, from)
            }
        })
        .collect();
    out.sort_unstable();
    out
}

// ============================================================================
// Small cycles: 3 to 5 exterior vertices
// ============================================================================

/// Exterior vertices get pairwise distinct colors from `{3..=7}`; the
/// interior tree maps into the directed triangle on `{0, 1, 2}`. The two
/// palettes are disjoint, so the verifier conditions decompose.
pub fn color_small_cycle(h: &OrientedHalin) -> Result<Coloring, ColorError> {
    let m = h.exterior_count();
    if !(3..=5).contains(&m) {
        return Err(ColorError::Precondition(format!(
            "small-cycle case needs 3 to 5 exterior vertices, got {m}"
        )));
    }
    let mut colors = vec![0u8; h.vertex_count()];
    for (i, &leaf) in h.leaf_order().iter().enumerate() {
        colors[leaf] = 3 + i as u8;
    }
    // Walk interior tree arcs from the root, stepping around the directed
    // triangle with each arc's direction.
    let tree = h.tree();
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        for &w in tree.children_of(v) {
            if h.is_exterior(w) {
                continue;
            }
            colors[w] = if h.edge_down(w) {
                (colors[v] + 1) % 3
            } else {
                (colors[v] + 2) % 3
            };
            stack.push(w);
        }
    }
    Ok(must_verify(h, colors, "small-cycle"))
}

// ============================================================================
// Mixed cycle: two arcs meet head-to-head
// ============================================================================

/// Removes one head-to-head exterior vertex, colors the remaining fan from
/// that vertex's father, and spends color 7 on the removed vertex. Both of
/// its cycle arcs point into it, so only its (at most one) outgoing tree arc
/// could pair up, and the fan's nonzero endpoints rule that out.
pub fn color_mixed_cycle(h: &OrientedHalin) -> Result<Coloring, ColorError> {
    let m = h.exterior_count();
    let dirs = h.cycle_directions();
    let meeting = (0..m)
        .find(|&j| dirs[(j + m - 1) % m] && !dirs[j])
        .ok_or_else(|| {
            ColorError::Precondition("mixed-cycle case needs a head-to-head meeting".to_string())
        })?;
    let v2 = h.leaf_order()[meeting];
    let father = h
        .tree()
        .parent_of(v2)
        .expect("exterior vertices have a father");
    let fan = fan_from_cycle_vertex_removal(h, father, v2)?;
    let fan_coloring = color_fan(&fan);
    let mut colors = vec![0u8; h.vertex_count()];
    for (&v, &c) in fan_coloring.colors() {
        colors[v] = c;
    }
    colors[v2] = 7;
    Ok(must_verify(h, colors, "mixed-cycle"))
}

// ============================================================================
// Uniform cycle, at least two interior vertices
// ============================================================================

fn require_uniform_forward(h: &OrientedHalin, case: &str) -> Result<(), ColorError> {
    if h.cycle_directions().iter().all(|&d| d) {
        Ok(())
    } else {
        Err(ColorError::Precondition(format!(
            "{case} expects a uniformly forward exterior cycle (normalize by mirroring)"
        )))
    }
}

fn lowest_interior_with_father(
    h: &OrientedHalin,
    r: usize,
) -> Result<(usize, Vec<usize>), ColorError> {
    let tree = h.tree();
    let sons = tree.children_of(r).to_vec();
    if sons.is_empty() || sons.iter().any(|&s| !h.is_exterior(s)) {
        return Err(ColorError::Precondition(format!(
            "vertex {r} is not a lowest-level interior vertex"
        )));
    }
    let father = tree.parent_of(r).ok_or_else(|| {
        ColorError::Precondition(format!("vertex {r} has no father in the interior tree"))
    })?;
    Ok((father, sons))
}

/// The lowest interior vertex has a single cycle son. Remove both, color the
/// fan rooted at the father, then reinstate them around color 7.
pub fn color_interior_case1(h: &OrientedHalin, r: usize) -> Result<Coloring, ColorError> {
    require_uniform_forward(h, "interior-k1")?;
    let (father, sons) = lowest_interior_with_father(h, r)?;
    if sons.len() != 1 {
        return Err(ColorError::Precondition(format!(
            "interior-k1 needs exactly one cycle son, vertex {r} has {}",
            sons.len()
        )));
    }
    let x1 = sons[0];
    let m = h.exterior_count();
    let pos = h.leaf_position(x1).expect("sons are exterior");
    let x0 = h.leaf_order()[h.cycle_prev(pos)];
    let x2 = h.leaf_order()[h.cycle_next(pos)];

    let fan = fan_after_removals(h, father, &[x1, r], x2)?;
    let fan_coloring = color_fan(&fan);
    let mut base = vec![0u8; h.vertex_count()];
    for (&v, &c) in fan_coloring.colors() {
        base[v] = c;
    }
    let (c0, c2) = (base[x0], base[x2]);
    let r_candidates = fitting_colors(base[father], h.edge_down(r));

    if c0 != c2 {
        // x1 takes color 7; r needs a color fitting the father and clear of
        // both cycle neighbors of x1.
        for &cr in &r_candidates {
            if cr == c0 || cr == c2 {
                continue;
            }
            let mut colors = base.clone();
            colors[r] = cr;
            colors[x1] = 7;
            if let Some(c) = try_colors(h, colors) {
                return Ok(c);
            }
        }
        panic!(
            "interior-k1 first branch exhausted; instance {}",
            to_json(h)
        );
    }

    // c(x0) == c(x2): collect the x1 colors reachable through r, then see
    // which side of x1 can stay in the tournament.
    let mut pairs: Vec<(u8, u8)> = Vec::new();
    for &cr in &r_candidates {
        for cx in fitting_colors(cr, h.edge_down(x1)) {
            pairs.push((cr, cx));
        }
    }
    let obtainable: std::collections::BTreeSet<u8> = pairs.iter().map(|&(_, cx)| cx).collect();
    let proper_into_x1: std::collections::BTreeSet<u8> = obtainable
        .iter()
        .copied()
        .filter(|&cx| t7_arc(c0, cx))
        .collect();
    let proper_out_of_x1: std::collections::BTreeSet<u8> = obtainable
        .iter()
        .copied()
        .filter(|&cx| t7_arc(cx, c2))
        .collect();

    let former = proper_into_x1.len() >= 3;
    for use_former in [former, !former] {
        if use_former {
            // The arc (x0, x1) stays in the tournament; x2 takes color 7.
            let x3 = h.leaf_order()[(pos + 2) % m];
            let q = h.tree().parent_of(x2).expect("exterior vertex");
            for &(cr, cx) in &pairs {
                if !proper_into_x1.contains(&cx) || cx == base[x3] || cx == base[q] {
                    continue;
                }
                let mut colors = base.clone();
                colors[r] = cr;
                colors[x1] = cx;
                colors[x2] = 7;
                if let Some(c) = try_colors(h, colors) {
                    return Ok(c);
                }
            }
        } else {
            // The arc (x1, x2) stays in the tournament; x0 takes color 7.
            let xm1 = h.leaf_order()[(pos + m - 2) % m];
            let q = h.tree().parent_of(x0).expect("exterior vertex");
            for &(cr, cx) in &pairs {
                if !proper_out_of_x1.contains(&cx) || cx == base[xm1] || cx == base[q] {
                    continue;
                }
                let mut colors = base.clone();
                colors[r] = cr;
                colors[x1] = cx;
                colors[x0] = 7;
                if let Some(c) = try_colors(h, colors) {
                    return Ok(c);
                }
            }
        }
    }
    panic!(
        "interior-k1 second branch exhausted; instance {}",
        to_json(h)
    );
}

/// Shared tail of the forward-root and backward-root cases: compose the two
/// fans, then place the removed arc back, preferring an alternative that
/// needs no eighth color.
fn color_split_case(
    h: &OrientedHalin,
    r: usize,
    gap: usize,
    reattach: usize,
    flank: usize,
    seven_on: usize,
    case: &str,
) -> Result<Coloring, ColorError> {
    let split = fan_split(h, r, gap)?;
    let inner_coloring = color_fan(&split.inner);
    let outer_coloring = color_fan(&split.outer);
    let composed = compose_fans(
        &split.inner,
        &inner_coloring,
        &split.outer,
        &outer_coloring,
        split.root_arc_forward,
        split.link_arc_forward,
    )
    .expect("fan colorings satisfy the composition contract");

    let full = |d: &std::collections::BTreeMap<usize, u8>| -> Vec<u8> {
        let mut colors = vec![0u8; h.vertex_count()];
        for (&v, &c) in d {
            colors[v] = c;
        }
        colors
    };
    // If either alternative colors the reattachment leaf 0, the removed arc
    // rides along the spoke's color pair and no eighth color is needed.
    for d in &composed.alternatives {
        if d[&reattach] == 0 {
            return Ok(must_verify(h, full(d), case));
        }
    }
    // Otherwise pick the alternative separating the two vertices that flank
    // the son taking color 7.
    let flank_color = composed.alternatives[0][&flank];
    debug_assert_eq!(flank_color, composed.alternatives[1][&flank]);
    let pick = composed
        .alternatives
        .iter()
        .find(|d| d[&reattach] != flank_color)
        .expect("the alternatives differ at the reattachment leaf");
    let mut colors = full(pick);
    colors[seven_on] = 7;
    Ok(must_verify(h, colors, case))
}

/// Lowest interior vertex with a spoke arc down to its first son.
pub fn color_interior_case2(h: &OrientedHalin, r: usize) -> Result<Coloring, ColorError> {
    require_uniform_forward(h, "interior-forward-root")?;
    let (_, sons) = lowest_interior_with_father(h, r)?;
    if sons.len() < 2 || !h.edge_down(sons[0]) {
        return Err(ColorError::Precondition(format!(
            "interior-forward-root needs at least two sons and a downward first spoke at {r}"
        )));
    }
    let m = h.exterior_count();
    let p0 = h.leaf_position(sons[0]).expect("sons are exterior");
    let left_gap = (p0 + m - 1) % m;
    let x0 = h.leaf_order()[left_gap];
    color_split_case(h, r, left_gap, x0, sons[1], sons[0], "interior-forward-root")
}

/// Lowest interior vertex with a spoke arc up from its last son.
pub fn color_interior_case3(h: &OrientedHalin, r: usize) -> Result<Coloring, ColorError> {
    require_uniform_forward(h, "interior-backward-root")?;
    let (_, sons) = lowest_interior_with_father(h, r)?;
    let k = sons.len();
    if k < 2 || h.edge_down(sons[k - 1]) {
        return Err(ColorError::Precondition(format!(
            "interior-backward-root needs at least two sons and an upward last spoke at {r}"
        )));
    }
    let m = h.exterior_count();
    let p0 = h.leaf_position(sons[0]).expect("sons are exterior");
    let right_gap = (p0 + k - 1) % m;
    let xk1 = h.leaf_order()[(p0 + k) % m];
    color_split_case(
        h,
        r,
        right_gap,
        xk1,
        sons[k - 2],
        sons[k - 1],
        "interior-backward-root",
    )
}

/// The turn construction: spokes rise into `r` at the gap's tail and fall
/// out of `r` at its head. Also serves the single-interior mixed-spoke case,
/// where every leaf is a son of the hub.
///
/// Returns the coloring and whether the bounded local repair had to fire.
pub fn color_interior_case4(
    h: &OrientedHalin,
    r: usize,
    gap: usize,
) -> Result<(Coloring, bool), ColorError> {
    require_uniform_forward(h, "interior-turn")?;
    let m = h.exterior_count();
    if gap >= m {
        return Err(ColorError::Precondition(format!(
            "gap {gap} out of range for {m} exterior vertices"
        )));
    }
    let tail = h.leaf_order()[gap];
    let head = h.leaf_order()[(gap + 1) % m];
    let tree = h.tree();
    let sons_ok = tree.parent_of(tail) == Some(r)
        && tree.parent_of(head) == Some(r)
        && !h.edge_down(tail)
        && h.edge_down(head);
    if !sons_ok {
        return Err(ColorError::Precondition(format!(
            "interior-turn needs spokes ({tail} -> {r}) and ({r} -> {head}) around gap {gap}"
        )));
    }

    let fan = fan_from_cycle_arc_removal(h, r, gap)?;
    let fan_coloring = color_fan(&fan);
    let mut base = vec![0u8; h.vertex_count()];
    for (&v, &c) in fan_coloring.colors() {
        base[v] = c;
    }
    let prev = h.leaf_order()[h.cycle_prev(gap)];
    let next2 = h.leaf_order()[(gap + 2) % m];
    let (c_prev, c_tail, c_head, c_next2) = (base[prev], base[tail], base[head], base[next2]);

    let primary = if c_prev != c_head {
        let mut colors = base.clone();
        colors[tail] = 7;
        try_colors(h, colors)
    } else if c_tail != c_next2 {
        let mut colors = base.clone();
        colors[head] = 7;
        try_colors(h, colors)
    } else {
        // Both flanks collide. The spoke into r pins the tail's color to a
        // non-residue, so the head can move to a residue fitting its cycle
        // successor while the tail takes 7.
        let mut found = None;
        for cand in [1u8, 2, 4] {
            if !t7_arc(cand, c_next2) || cand == c_prev {
                continue;
            }
            let mut colors = base.clone();
            colors[head] = cand;
            colors[tail] = 7;
            if let Some(c) = try_colors(h, colors) {
                found = Some(c);
                break;
            }
        }
        found
    };
    if let Some(coloring) = primary {
        return Ok((coloring, false));
    }

    // Bounded local repair: all recolorings of the two gap leaves with the
    // eighth color on one of them.
    for (seven_on, other) in [(tail, head), (head, tail)] {
        for cand in 0..=6u8 {
            let mut colors = base.clone();
            colors[seven_on] = 7;
            colors[other] = cand;
            if let Some(c) = try_colors(h, colors) {
                return Ok((c, true));
            }
        }
    }
    panic!(
        "interior-turn local repair exhausted; gap {gap}; instance {}",
        to_json(h)
    );
}

// ============================================================================
// Single interior vertex
// ============================================================================

/// Colors the uniformly directed `n`-cycle (vertices `0..n`, arcs
/// `(i, i+1 mod n)`) with as few colors as the pattern family allows:
/// exactly 3 when `n` is divisible by 3, all 5 when `n == 5`, otherwise 4.
pub fn color_directed_cycle(n: usize) -> Result<Coloring, ColorError> {
    if n < 3 {
        return Err(ColorError::Precondition(format!(
            "a directed cycle needs at least 3 vertices, got {n}"
        )));
    }
    Ok(Coloring::new(directed_cycle_pattern(n)).expect("patterns stay below 8"))
}

fn directed_cycle_pattern(n: usize) -> Vec<u8> {
    debug_assert!(n >= 3);
    let mut pattern = Vec::with_capacity(n);
    match n % 3 {
        0 => {
            for i in 0..n {
                pattern.push((i % 3) as u8);
            }
        }
        _ if n == 5 => pattern.extend_from_slice(&[0, 1, 2, 3, 4]),
        1 => {
            // 0 1 2 ... 0 1 2 3; the quotient gains arcs (2,3), (3,0).
            for _ in 0..(n - 4) / 3 {
                pattern.extend_from_slice(&[0, 1, 2]);
            }
            pattern.extend_from_slice(&[0, 1, 2, 3]);
        }
        _ => {
            // n % 3 == 2, n >= 8: two four-blocks absorb the remainder.
            for _ in 0..(n - 8) / 3 {
                pattern.extend_from_slice(&[0, 1, 2]);
            }
            pattern.extend_from_slice(&[0, 1, 2, 3, 0, 1, 2, 3]);
        }
    }
    pattern
}

/// One interior vertex, uniform cycle, all spokes one way: pattern-color the
/// cycle and give the hub the next fresh color. All hub arcs run the same
/// direction, so no ordered color pair can recur reversed through the hub.
pub fn color_single_interior_uniform(h: &OrientedHalin) -> Result<Coloring, ColorError> {
    require_uniform_forward(h, "single-interior-uniform")?;
    if h.interior_count() != 1 {
        return Err(ColorError::Precondition(format!(
            "single-interior case needs exactly one interior vertex, got {}",
            h.interior_count()
        )));
    }
    let spokes_down = h.leaf_order().iter().filter(|&&v| h.edge_down(v)).count();
    if spokes_down != 0 && spokes_down != h.exterior_count() {
        return Err(ColorError::Precondition(
            "single-interior-uniform needs all spokes in one direction".to_string(),
        ));
    }
    let m = h.exterior_count();
    let pattern = directed_cycle_pattern(m);
    let hub_color = pattern.iter().copied().max().unwrap() + 1;
    let mut colors = vec![0u8; h.vertex_count()];
    for (j, &leaf) in h.leaf_order().iter().enumerate() {
        colors[leaf] = pattern[j];
    }
    colors[h.tree().root()] = hub_color;
    Ok(must_verify(h, colors, "single-interior-uniform"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::OrientedGraph;
    use crate::halin::{
        enumerate_halin, generate_random_halin, star_halin, GenProfile, PlaneTree,
    };
    use crate::oracle::exists_k_coloring;

    fn directed_cycle(n: usize) -> OrientedGraph {
        OrientedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn k4_goes_through_small_cycle() {
        let h = star_halin(3);
        let out = color_halin(&h).unwrap();
        assert_eq!(out.case, CaseTag::SmallCycle);
        assert!(out.coloring.distinct_colors() <= 8);
        // 3 exterior colors from {3,4,5} plus one interior color.
        assert_eq!(out.coloring.distinct_colors(), 4);
    }

    #[test]
    fn five_exterior_one_interior_uses_six_colors() {
        let h = star_halin(5);
        let c = color_small_cycle(&h).unwrap();
        assert_eq!(c.distinct_colors(), 6);
    }

    #[test]
    fn small_cycle_handles_interior_chains() {
        // root(0) -> [1, 2, 3]; 2 -> [4, 5]; four leaves total: 1, 4, 5, 3.
        let mut children = vec![vec![1, 2, 3], vec![], vec![4, 5]];
        children.extend(std::iter::repeat_with(Vec::new).take(3));
        let tree = PlaneTree::new(0, children).unwrap();
        let h = OrientedHalin::new(
            tree,
            vec![true, false, true, true, false, true],
            vec![true, false, true, false],
        )
        .unwrap();
        let c = color_small_cycle(&h).unwrap();
        // Interior palette {0,1,2}, exterior palette {3..=6}.
        assert!(c.get(0) < 3 && c.get(2) < 3);
        for leaf in [1usize, 4, 5, 3] {
            assert!(c.get(leaf) >= 3);
        }
    }

    #[test]
    fn directed_cycle_patterns_verify_and_hit_the_color_counts() {
        for n in 3..=40 {
            let c = color_directed_cycle(n).unwrap();
            let g = directed_cycle(n);
            assert!(verify_oriented_coloring(&g, &c).unwrap().is_valid(), "n = {n}");
            let k = c.distinct_colors();
            if n % 3 == 0 {
                assert_eq!(k, 3, "n = {n}");
            } else if n == 5 {
                assert_eq!(k, 5);
            } else {
                assert_eq!(k, 4, "n = {n}");
            }
        }
        assert!(color_directed_cycle(2).is_err());
    }

    #[test]
    fn directed_cycle_minimality_against_the_oracle() {
        // The pattern family is optimal: 3 | n gives 3; C5 needs 5; else 4.
        for n in 3..=9 {
            let g = directed_cycle(n);
            let used = color_directed_cycle(n).unwrap().distinct_colors() as u8;
            assert!(exists_k_coloring(&g, used).unwrap().is_some());
            assert!(exists_k_coloring(&g, used - 1).unwrap().is_none(), "n = {n}");
        }
    }

    #[test]
    fn single_interior_uniform_spokes() {
        for m in [6usize, 7, 8, 11] {
            let h = star_halin(m);
            let out = color_halin(&h).unwrap();
            assert_eq!(out.case, CaseTag::SingleInteriorUniform);
            let expected = match m % 3 {
                0 => 4,
                _ if m == 5 => 6,
                _ => 5,
            };
            assert_eq!(out.coloring.distinct_colors(), expected, "m = {m}");
        }
    }

    #[test]
    fn single_interior_turn_spokes() {
        // Star with 6 leaves, spokes alternating in and out.
        let m = 6;
        let h = star_halin(m);
        let edge_down: Vec<bool> = (0..=m).map(|v| v % 2 == 0).collect();
        let h = OrientedHalin::new(h.tree().clone(), edge_down, vec![true; m]).unwrap();
        let out = color_halin(&h).unwrap();
        assert_eq!(out.case, CaseTag::SingleInteriorTurn);
        assert!(out.coloring.count_of(7) <= 1);
    }

    #[test]
    fn mixed_cycle_spends_seven_on_the_meeting_vertex() {
        let m = 6;
        let star = star_halin(m);
        let cycle: Vec<bool> = (0..m).map(|i| i % 2 == 0).collect();
        let h = OrientedHalin::new(star.tree().clone(), vec![true; m + 1], cycle).unwrap();
        let out = color_halin(&h).unwrap();
        assert_eq!(out.case, CaseTag::MixedCycle);
        // Smallest head-to-head position: arc 0 runs 1->2, arc 1 runs 3->2,
        // so the meeting vertex is leaf 2 (position 1).
        assert_eq!(out.coloring.get(2), 7);
        assert_eq!(out.coloring.count_of(7), 1);
    }

    #[test]
    fn mixed_cycle_tolerates_both_tree_arc_directions_at_the_meeting() {
        let m = 6;
        let star = star_halin(m);
        let cycle: Vec<bool> = (0..m).map(|i| i % 2 == 0).collect();
        for meeting_arc_up in [false, true] {
            let mut edge_down = vec![true; m + 1];
            edge_down[2] = !meeting_arc_up;
            let h = OrientedHalin::new(star.tree().clone(), edge_down, cycle.clone()).unwrap();
            let out = color_halin(&h).unwrap();
            assert_eq!(out.case, CaseTag::MixedCycle);
        }
    }

    #[test]
    fn uniform_backward_cycles_are_normalized_by_mirroring() {
        let m = 7;
        let star = star_halin(m);
        let h = OrientedHalin::new(star.tree().clone(), vec![true; m + 1], vec![false; m])
            .unwrap();
        let out = color_halin(&h).unwrap();
        assert_eq!(out.case, CaseTag::SingleInteriorUniform);
    }

    #[test]
    fn two_interior_cases_dispatch_by_spoke_directions() {
        // root(0) -> [1, 2]; 1 -> leaves 3,4,5 ; 2 -> leaves 6,7,8.
        let mut children = vec![vec![1, 2], vec![3, 4, 5], vec![6, 7, 8]];
        children.extend(std::iter::repeat_with(Vec::new).take(6));
        let tree = PlaneTree::new(0, children).unwrap();
        let mk = |spokes: [bool; 3]| {
            let mut edge_down = vec![true; 9];
            edge_down[3] = spokes[0];
            edge_down[4] = spokes[1];
            edge_down[5] = spokes[2];
            OrientedHalin::new(tree.clone(), edge_down, vec![true; 6]).unwrap()
        };
        let fwd = color_halin(&mk([true, false, false])).unwrap();
        assert_eq!(fwd.case, CaseTag::InteriorForwardRoot);
        let bwd = color_halin(&mk([false, true, false])).unwrap();
        assert_eq!(bwd.case, CaseTag::InteriorBackwardRoot);
        let turn = color_halin(&mk([false, true, true])).unwrap();
        assert_eq!(turn.case, CaseTag::InteriorTurn);
        assert!(!turn.used_case4_fallback);
    }

    #[test]
    fn case1_fires_on_single_son_interior_vertices() {
        // root(0) -> [1, 2, 3, 4, 5, 6]; 2 -> [7]. Leaves 1, 7, 3, 4, 5, 6;
        // vertex 2 is the lowest interior vertex with a single cycle son.
        let children = vec![
            vec![1, 2, 3, 4, 5, 6],
            vec![],
            vec![7],
            vec![],
            vec![],
            vec![],
            vec![],
            vec![],
        ];
        let tree = PlaneTree::new(0, children).unwrap();
        let h = OrientedHalin::new(tree, vec![true; 8], vec![true; 6]).unwrap();
        assert_eq!(h.exterior_count(), 6);
        let out = color_halin(&h).unwrap();
        assert_eq!(out.case, CaseTag::InteriorK1);
        assert!(out.coloring.count_of(7) <= 1);
    }

    /// Exhaustive orientation sweep over hand-built trees with degree-2
    /// interior vertices, which the strict enumerator never produces. This
    /// is the only territory of the single-son case and of splits whose
    /// outer fan has a single leaf.
    #[test]
    fn lax_instances_with_degree_two_interiors_color_exhaustively() {
        let families: [(Vec<Vec<usize>>, &[CaseTag]); 3] = [
            // Single-son interior vertex 1 above leaf 7.
            (
                vec![vec![1, 2, 3, 4, 5, 6], vec![7], vec![], vec![], vec![], vec![], vec![], vec![]],
                &[CaseTag::InteriorK1],
            ),
            // Root with two children; vertex 1 owns all leaves but one, so
            // the outer fan of a split has a single leaf.
            (
                vec![vec![1, 2], vec![3, 4, 5, 6, 7], vec![], vec![], vec![], vec![], vec![], vec![]],
                &[CaseTag::InteriorForwardRoot, CaseTag::InteriorBackwardRoot, CaseTag::InteriorTurn],
            ),
            // A degree-2 chain (1 -> 6) above the lowest interior vertex.
            (
                vec![vec![1, 2, 3, 4, 5], vec![6], vec![], vec![], vec![], vec![], vec![7, 8], vec![], vec![]],
                &[CaseTag::InteriorForwardRoot, CaseTag::InteriorBackwardRoot, CaseTag::InteriorTurn],
            ),
        ];
        for (children, expected_tags) in families {
            let tree = PlaneTree::new(0, children).unwrap();
            let n = tree.node_count();
            let m = tree.leaves().len();
            assert_eq!(m, 6);
            let bits = (n - 1 + m) as u32;
            let mut seen = std::collections::BTreeSet::new();
            for mask in 0u64..(1u64 << bits) {
                let mut edge_down = vec![true; n];
                for (v, flag) in edge_down.iter_mut().enumerate().skip(1) {
                    *flag = (mask >> (v - 1)) & 1 == 1;
                }
                let cycle: Vec<bool> = (0..m).map(|i| (mask >> (n - 1 + i)) & 1 == 1).collect();
                let h = OrientedHalin::new(tree.clone(), edge_down, cycle).unwrap();
                let out = color_halin(&h).unwrap();
                assert!(out.coloring.distinct_colors() <= 8);
                assert!(out.coloring.count_of(7) <= 1);
                seen.insert(out.case);
            }
            for tag in expected_tags {
                assert!(seen.contains(tag), "{tag} never fired in this family");
            }
        }
    }

    #[test]
    fn random_instances_color_and_verify() {
        for seed in 0..50 {
            let leaves = 7 + (seed as usize % 20);
            let h = generate_random_halin(leaves, &GenProfile::default(), 1000 + seed).unwrap();
            let out = color_halin(&h).unwrap();
            assert!(out.coloring.distinct_colors() <= 8);
            assert!(out.coloring.count_of(7) <= 1);
        }
    }

    #[test]
    fn exhaustive_four_leaves_all_valid() {
        let mut cases = std::collections::BTreeMap::new();
        for h in enumerate_halin(4) {
            let out = color_halin(&h).unwrap();
            *cases.entry(out.case.as_str()).or_insert(0usize) += 1;
            assert!(out.coloring.count_of(7) <= 1);
        }
        // Everything with <= 5 leaves is the small-cycle case.
        assert_eq!(cases.len(), 1);
        assert!(cases.contains_key("small-cycle"));
    }

    #[test]
    fn dispatch_is_deterministic() {
        let h = generate_random_halin(12, &GenProfile::default(), 5).unwrap();
        let a = color_halin(&h).unwrap();
        let b = color_halin(&h).unwrap();
        assert_eq!(a.coloring, b.coloring);
        assert_eq!(a.case, b.case);
    }
}

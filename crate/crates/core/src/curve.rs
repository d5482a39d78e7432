//! Greedy cover/bypass/detour algorithms on an abstract parametrized curve.
//!
//! The model is purely combinatorial: a curve is a finite list of samples
//! (strictly increasing parameters in [0,1], points in a finite metric
//! space), a region is a point set with a diameter, and the trace of the
//! curve on a hyperplane boundary is a cyclically ordered subset of samples
//! with a diameter per elementary gap. Segment diameters are the maximum
//! over the covered gaps, so refining a partition never hurts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveModelDoc {
    pub samples: Vec<SampleDoc>,
    pub metric: Vec<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SampleDoc {
    pub t: f64,
    pub point: usize,
}

#[derive(Clone, Debug)]
pub struct CurveModel {
    /// (parameter, point id), parameters strictly increasing from 0 to 1.
    samples: Vec<(f64, usize)>,
    metric: Vec<Vec<f64>>,
}

impl CurveModel {
    pub fn new(samples: Vec<(f64, usize)>, metric: Vec<Vec<f64>>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::Schema("curve needs at least one sample".into()));
        }
        for w in samples.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Schema("parameters must strictly increase".into()));
            }
        }
        if samples[0].0 != 0.0 {
            return Err(Error::Schema("first parameter must be 0".into()));
        }
        if samples.len() > 1 && samples[samples.len() - 1].0 != 1.0 {
            return Err(Error::Schema("last parameter must be 1".into()));
        }
        let n = metric.len();
        for row in &metric {
            if row.len() != n {
                return Err(Error::Schema("metric table is not square".into()));
            }
        }
        for (t, p) in &samples {
            if *p >= n {
                return Err(Error::Schema(format!("sample at {t} uses unknown point {p}")));
            }
        }
        for i in 0..n {
            if metric[i][i] != 0.0 {
                return Err(Error::Schema("metric diagonal must be zero".into()));
            }
            for j in 0..n {
                if metric[i][j] < 0.0 || metric[i][j] != metric[j][i] {
                    return Err(Error::Schema("metric must be symmetric nonnegative".into()));
                }
            }
        }
        // Triangle inequality over the points the curve actually visits.
        let used: BTreeSet<usize> = samples.iter().map(|&(_, p)| p).collect();
        for &a in &used {
            for &b in &used {
                for &c in &used {
                    if metric[a][b] > metric[a][c] + metric[c][b] + 1e-9 {
                        return Err(Error::Schema(
                            "metric violates the triangle inequality on samples".into(),
                        ));
                    }
                }
            }
        }
        Ok(Self { samples, metric })
    }

    pub fn from_doc(doc: &CurveModelDoc) -> Result<Self> {
        Self::new(
            doc.samples.iter().map(|s| (s.t, s.point)).collect(),
            doc.metric.clone(),
        )
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    pub fn parameter(&self, sample: usize) -> f64 {
        self.samples[sample].0
    }

    pub fn point(&self, sample: usize) -> usize {
        self.samples[sample].1
    }

    pub fn distance(&self, p: usize, q: usize) -> f64 {
        self.metric[p][q]
    }
}

/// A region of the metric space with its diameter.
#[derive(Clone, Debug)]
pub struct Region {
    pub id: usize,
    pub members: BTreeSet<usize>,
    pub diameter: f64,
}

impl Region {
    pub fn new(id: usize, members: BTreeSet<usize>, metric: &CurveModel) -> Self {
        let mut diameter: f64 = 0.0;
        for &a in &members {
            for &b in &members {
                diameter = diameter.max(metric.distance(a, b));
            }
        }
        Self {
            id,
            members,
            diameter,
        }
    }

    pub fn contains(&self, point: usize) -> bool {
        self.members.contains(&point)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverOutcome {
    /// Indices of an inclusion-minimal covering subfamily, ascending.
    Cover(Vec<usize>),
    /// Samples no region of diameter < δ contains.
    Failure { uncovered: Vec<usize> },
}

/// Inclusion-minimal subfamily of the regions of diameter < δ covering all
/// samples: take every eligible region, then drop regions in ascending id
/// order whenever the rest still covers.
pub fn delta_cover(curve: &CurveModel, regions: &[Region], delta: f64) -> CoverOutcome {
    assert!(delta > 0.0, "delta must be positive");
    let eligible: Vec<usize> = (0..regions.len())
        .filter(|&i| regions[i].diameter < delta)
        .collect();
    let uncovered: Vec<usize> = (0..curve.n_samples())
        .filter(|&s| !eligible.iter().any(|&i| regions[i].contains(curve.point(s))))
        .collect();
    if !uncovered.is_empty() {
        return CoverOutcome::Failure { uncovered };
    }
    let mut chosen: Vec<usize> = eligible;
    let mut i = 0;
    while i < chosen.len() {
        let candidate = chosen[i];
        let covers_without = (0..curve.n_samples()).all(|s| {
            chosen
                .iter()
                .any(|&r| r != candidate && regions[r].contains(curve.point(s)))
        });
        if covers_without {
            chosen.remove(i);
        } else {
            i += 1;
        }
    }
    CoverOutcome::Cover(chosen)
}

/// The successor chain of a cover: start at the region holding the first
/// sample, repeatedly jump to the region holding the current supremum
/// sample whose own supremum is largest. Parameters strictly increase until
/// the region holding parameter 1.
pub fn successor_chain(curve: &CurveModel, cover: &[Region]) -> Result<Vec<usize>> {
    let sup: Vec<Option<(f64, usize)>> = cover
        .iter()
        .map(|r| {
            (0..curve.n_samples())
                .filter(|&s| r.contains(curve.point(s)))
                .map(|s| (curve.parameter(s), s))
                .fold(None, |best: Option<(f64, usize)>, cur| match best {
                    Some(b) if b.0 >= cur.0 => Some(b),
                    _ => Some(cur),
                })
        })
        .collect();
    let uncovered = (0..curve.n_samples())
        .filter(|&s| !cover.iter().any(|r| r.contains(curve.point(s))))
        .count();
    if uncovered > 0 {
        return Err(Error::NotACover(uncovered));
    }
    // Best region containing a sample: maximal supremum, least id.
    let best_region_at = |sample: usize| -> usize {
        let mut best: Option<(usize, f64)> = None;
        for (i, r) in cover.iter().enumerate() {
            if !r.contains(curve.point(sample)) {
                continue;
            }
            let y = sup[i].expect("region contains a sample").0;
            best = match best {
                Some((bi, by)) if by >= y => Some((bi, by)),
                _ => Some((i, y)),
            };
        }
        best.expect("cover covers every sample").0
    };

    let last = curve.n_samples() - 1;
    let mut chain = vec![best_region_at(0)];
    loop {
        let current = *chain.last().unwrap();
        let (y, y_sample) = sup[current].expect("chain regions are nonempty");
        if y_sample == last {
            break;
        }
        let next = best_region_at(y_sample);
        let (ny, _) = sup[next].unwrap();
        if ny <= y {
            return Err(Error::ChainStalled(y));
        }
        chain.push(next);
    }
    Ok(chain)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArcSystemDoc {
    pub trace: Vec<usize>,
    pub gap_diameters: Vec<f64>,
}

/// The trace of the curve on a hyperplane boundary: a cyclically ordered
/// subset of samples, with the diameter of each elementary gap (between
/// cyclic position i and i+1).
#[derive(Clone, Debug)]
pub struct ArcSystem {
    /// Sample index at each cyclic position.
    trace: Vec<usize>,
    gap_diameter: Vec<f64>,
}

impl ArcSystem {
    pub fn new(curve: &CurveModel, trace: Vec<usize>, gap_diameter: Vec<f64>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &s in &trace {
            if s >= curve.n_samples() {
                return Err(Error::Schema(format!("trace uses unknown sample {s}")));
            }
            if !seen.insert(s) {
                return Err(Error::Schema("trace repeats a sample".into()));
            }
        }
        if !trace.is_empty() && gap_diameter.len() != trace.len() {
            return Err(Error::Schema(
                "need one gap diameter per cyclic position".into(),
            ));
        }
        if gap_diameter.iter().any(|&d| d < 0.0) {
            return Err(Error::Schema("gap diameters must be nonnegative".into()));
        }
        Ok(Self {
            trace,
            gap_diameter,
        })
    }

    pub fn from_doc(curve: &CurveModel, doc: &ArcSystemDoc) -> Result<Self> {
        Self::new(curve, doc.trace.clone(), doc.gap_diameters.clone())
    }

    pub fn len(&self) -> usize {
        self.trace.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trace.is_empty()
    }

    pub fn sample_at(&self, pos: usize) -> usize {
        self.trace[pos]
    }

    pub fn position_of(&self, sample: usize) -> Option<usize> {
        self.trace.iter().position(|&s| s == sample)
    }

    fn step(&self, pos: usize, dir: i8) -> usize {
        let m = self.trace.len();
        match dir {
            1 => (pos + 1) % m,
            _ => (pos + m - 1) % m,
        }
    }

    /// Gap index crossed when moving one step from `pos` in `dir`.
    fn gap_crossed(&self, pos: usize, dir: i8) -> usize {
        let m = self.trace.len();
        match dir {
            1 => pos,
            _ => (pos + m - 1) % m,
        }
    }
}

/// A δ-bypass: a directed arc of the trace circle from `partition[0]` to
/// `partition[last]`, subdivided at trace points so that every sub-segment
/// has diameter < δ and parameters never look backward past the next
/// partition point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bypass {
    /// +1 walks in increasing cyclic position, -1 the other way.
    pub direction: i8,
    /// Cyclic positions; a single entry is a degenerate bypass.
    pub partition: Vec<usize>,
}

impl Bypass {
    pub fn start(&self) -> usize {
        self.partition[0]
    }

    pub fn end(&self) -> usize {
        *self.partition.last().unwrap()
    }

    pub fn is_degenerate(&self) -> bool {
        self.partition.len() == 1
    }

    /// All cyclic positions strictly covered by the arc, start inclusive,
    /// end inclusive.
    pub fn arc_positions(&self, arcs: &ArcSystem) -> Vec<usize> {
        let mut out = vec![self.start()];
        let mut pos = self.start();
        while pos != self.end() {
            pos = arcs.step(pos, self.direction);
            out.push(pos);
        }
        out
    }
}

/// Validates the bypass invariants literally from its fields: sub-segment
/// diameters < δ, strictly increasing partition parameters, and the
/// look-ahead condition on every half-open sub-segment.
pub fn check_bypass(
    curve: &CurveModel,
    arcs: &ArcSystem,
    bypass: &Bypass,
    delta: f64,
) -> std::result::Result<(), String> {
    if bypass.partition.is_empty() {
        return Err("empty partition".into());
    }
    if bypass.partition.len() == 1 {
        return Ok(());
    }
    let mut steps_total = 0usize;
    for w in bypass.partition.windows(2) {
        let (mut pos, target) = (w[0], w[1]);
        let t_next = curve.parameter(arcs.sample_at(target));
        let mut max_gap: f64 = 0.0;
        let mut steps = 0;
        while pos != target {
            if curve.parameter(arcs.sample_at(pos)) >= t_next {
                return Err(format!(
                    "position {pos} looks past the next partition point"
                ));
            }
            max_gap = max_gap.max(arcs.gap_diameter[arcs.gap_crossed(pos, bypass.direction)]);
            pos = arcs.step(pos, bypass.direction);
            steps += 1;
            if steps > arcs.len() {
                return Err("sub-segment wraps the whole circle".into());
            }
        }
        if max_gap >= delta {
            return Err(format!("sub-segment diameter {max_gap} >= delta"));
        }
        steps_total += steps;
    }
    if steps_total >= arcs.len() {
        return Err("bypass wraps the whole circle".into());
    }
    Ok(())
}

/// A δ-bypass from `x` whose endpoint parameter is maximal. `x` is a sample
/// index that must lie on the trace. Ties between directions prefer the
/// forward (+1) walk; the partition is the lexicographically earliest found
/// by the jump search.
pub fn maximal_bypass(
    curve: &CurveModel,
    arcs: &ArcSystem,
    x: usize,
    delta: f64,
) -> Result<Bypass> {
    let Some(start) = arcs.position_of(x) else {
        return Err(Error::NotOnTrace);
    };
    let mut best = Bypass {
        direction: 1,
        partition: vec![start],
    };
    let mut best_t = curve.parameter(x);
    for dir in [1i8, -1] {
        let m = arcs.len();
        // reach[s] = predecessor step for the position s steps from start.
        let mut reach: Vec<Option<usize>> = vec![None; m];
        reach[0] = Some(0);
        for s in 1..m {
            'pred: for u in 0..s {
                if reach[u].is_none() {
                    continue;
                }
                // Jump from step u to step s: every gap < delta, every
                // strictly earlier position parameter-below the target.
                let target_pos = pos_at(arcs, start, dir, s);
                let t_next = curve.parameter(arcs.sample_at(target_pos));
                let mut pos = pos_at(arcs, start, dir, u);
                while pos != target_pos {
                    if curve.parameter(arcs.sample_at(pos)) >= t_next {
                        continue 'pred;
                    }
                    if arcs.gap_diameter[arcs.gap_crossed(pos, dir)] >= delta {
                        continue 'pred;
                    }
                    pos = arcs.step(pos, dir);
                }
                reach[s] = Some(u);
                break;
            }
        }
        for s in (1..m).rev() {
            if reach[s].is_none() {
                continue;
            }
            let pos = pos_at(arcs, start, dir, s);
            let t = curve.parameter(arcs.sample_at(pos));
            if t > best_t {
                // Reconstruct the partition through predecessors.
                let mut steps = vec![s];
                let mut cur = s;
                while cur != 0 {
                    cur = reach[cur].unwrap();
                    steps.push(cur);
                }
                steps.reverse();
                best = Bypass {
                    direction: dir,
                    partition: steps
                        .into_iter()
                        .map(|u| pos_at(arcs, start, dir, u))
                        .collect(),
                };
                best_t = t;
            }
        }
    }
    debug_assert!(check_bypass(curve, arcs, &best, delta).is_ok());
    Ok(best)
}

fn pos_at(arcs: &ArcSystem, start: usize, dir: i8, steps: usize) -> usize {
    let m = arcs.len();
    match dir {
        1 => (start + steps) % m,
        _ => (start + m - (steps % m)) % m,
    }
}

/// An ordered set of maximal bypasses with pairwise disjoint parameter
/// intervals.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Detour {
    pub bypasses: Vec<Bypass>,
}

/// Greedy covering detour: repeatedly take the least uncovered trace
/// parameter and add its maximal bypass. Coverage is by parameter interval
/// [t(x), t(y)]. Terminates in at most trace-size steps.
pub fn covering_detour(curve: &CurveModel, arcs: &ArcSystem, delta: f64) -> Result<Detour> {
    let mut order: Vec<usize> = (0..arcs.len()).map(|p| arcs.sample_at(p)).collect();
    order.sort_by(|&a, &b| curve.parameter(a).partial_cmp(&curve.parameter(b)).unwrap());
    let mut bypasses: Vec<Bypass> = Vec::new();
    let mut covered_up_to: Option<f64> = None;
    for &sample in &order {
        let t = curve.parameter(sample);
        if covered_up_to.is_some_and(|hi| t <= hi) {
            continue;
        }
        let bypass = maximal_bypass(curve, arcs, sample, delta)?;
        let end_t = curve.parameter(arcs.sample_at(bypass.end()));
        covered_up_to = Some(end_t);
        bypasses.push(bypass);
    }
    Ok(Detour { bypasses })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DetourChecks {
    pub covering: bool,
    pub parameter_disjoint: bool,
    pub arc_disjoint: bool,
}

impl DetourChecks {
    pub fn all(&self) -> bool {
        self.covering && self.parameter_disjoint && self.arc_disjoint
    }
}

/// Re-checks the detour invariants from scratch.
pub fn check_detour(curve: &CurveModel, arcs: &ArcSystem, detour: &Detour) -> DetourChecks {
    let interval = |b: &Bypass| {
        (
            curve.parameter(arcs.sample_at(b.start())),
            curve.parameter(arcs.sample_at(b.end())),
        )
    };
    let covering = (0..arcs.len()).all(|p| {
        let t = curve.parameter(arcs.sample_at(p));
        detour.bypasses.iter().any(|b| {
            let (lo, hi) = interval(b);
            lo <= t && t <= hi
        })
    });
    let mut parameter_disjoint = true;
    let mut arc_disjoint = true;
    for (i, a) in detour.bypasses.iter().enumerate() {
        for b in &detour.bypasses[i + 1..] {
            let (alo, ahi) = interval(a);
            let (blo, bhi) = interval(b);
            if !(ahi < blo || bhi < alo) {
                parameter_disjoint = false;
            }
            let pa: BTreeSet<usize> = a.arc_positions(arcs).into_iter().collect();
            let pb: BTreeSet<usize> = b.arc_positions(arcs).into_iter().collect();
            if pa.intersection(&pb).next().is_some() {
                arc_disjoint = false;
            }
        }
    }
    DetourChecks {
        covering,
        parameter_disjoint,
        arc_disjoint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Points on a discrete circle of circumference `n` with arc distance.
    fn circle_metric(n: usize) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let d = (i as i64 - j as i64).unsigned_abs() as usize;
                m[i][j] = d.min(n - d) as f64;
            }
        }
        m
    }

    fn uniform_curve(n: usize) -> CurveModel {
        let samples: Vec<(f64, usize)> = (0..n)
            .map(|i| (i as f64 / (n - 1) as f64, i))
            .collect();
        CurveModel::new(samples, circle_metric(n)).unwrap()
    }

    #[test]
    fn single_sample_inside_one_region() {
        let curve = CurveModel::new(vec![(0.0, 0)], vec![vec![0.0]]).unwrap();
        let region = Region::new(0, BTreeSet::from([0]), &curve);
        match delta_cover(&curve, &[region], 1.0) {
            CoverOutcome::Cover(chosen) => assert_eq!(chosen, vec![0]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn oversized_regions_fail_with_all_samples_uncovered() {
        let curve = uniform_curve(6);
        let region = Region::new(0, (0..6).collect(), &curve);
        assert!(region.diameter >= 1.0);
        match delta_cover(&curve, &[region], 1.0) {
            CoverOutcome::Failure { uncovered } => {
                assert_eq!(uncovered, (0..6).collect::<Vec<_>>())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cover_of_circle_curve_is_minimal() {
        let n = 20;
        let curve = uniform_curve(n);
        // Overlapping windows of 4 consecutive points.
        let regions: Vec<Region> = (0..8)
            .map(|i| {
                let lo = i * 3 % n;
                let members: BTreeSet<usize> = (0..4).map(|k| (lo + k) % n).collect();
                Region::new(i, members, &curve)
            })
            .collect();
        let delta = 4.0;
        if let CoverOutcome::Cover(chosen) = delta_cover(&curve, &regions, delta) {
            // Removing any chosen region must break coverage.
            for &r in &chosen {
                let rest: Vec<usize> = chosen.iter().copied().filter(|&x| x != r).collect();
                let still_covers = (0..n).all(|s| {
                    rest.iter().any(|&i| regions[i].contains(curve.point(s)))
                });
                assert!(!still_covers, "region {r} was removable");
            }
        } else {
            panic!("expected a cover");
        }
    }

    #[test]
    fn chain_of_single_region_has_length_one() {
        let curve = uniform_curve(4);
        let all = Region::new(0, (0..4).collect(), &curve);
        assert_eq!(successor_chain(&curve, &[all]).unwrap(), vec![0]);
    }

    #[test]
    fn chain_of_two_overlapping_regions() {
        let curve = uniform_curve(5);
        let first = Region::new(0, (0..3).collect(), &curve);
        let second = Region::new(1, (2..5).collect(), &curve);
        assert_eq!(successor_chain(&curve, &[first, second]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn staircase_chain_matches_direct_recomputation() {
        let n = 13;
        let curve = uniform_curve(n);
        let regions: Vec<Region> = (0..6)
            .map(|i| {
                let members: BTreeSet<usize> =
                    (2 * i..(2 * i + 3).min(n)).collect();
                Region::new(i, members, &curve)
            })
            .collect();
        let chain = successor_chain(&curve, &regions).unwrap();
        // Independent recomputation straight from the definition.
        let y = |r: &Region| {
            (0..n)
                .filter(|&s| r.contains(s))
                .map(|s| curve.parameter(s))
                .fold(f64::MIN, f64::max)
        };
        let mut expected = Vec::new();
        let mut cur = (0..regions.len())
            .filter(|&i| regions[i].contains(0))
            .max_by(|&a, &b| y(&regions[a]).partial_cmp(&y(&regions[b])).unwrap())
            .unwrap();
        expected.push(cur);
        while y(&regions[cur]) < 1.0 {
            let frontier = (0..n)
                .find(|&s| curve.parameter(s) == y(&regions[cur]))
                .unwrap();
            cur = (0..regions.len())
                .filter(|&i| regions[i].contains(frontier))
                .max_by(|&a, &b| y(&regions[a]).partial_cmp(&y(&regions[b])).unwrap())
                .unwrap();
            expected.push(cur);
        }
        assert_eq!(chain, expected);
    }

    #[test]
    fn missing_sample_is_not_a_cover() {
        let curve = uniform_curve(4);
        let partial = Region::new(0, (0..3).collect(), &curve);
        assert!(matches!(
            successor_chain(&curve, &[partial]),
            Err(Error::NotACover(1))
        ));
    }

    #[test]
    fn isolated_trace_point_gets_degenerate_bypass() {
        let curve = uniform_curve(4);
        let arcs = ArcSystem::new(&curve, vec![0, 1, 2], vec![9.0, 9.0, 9.0]).unwrap();
        let b = maximal_bypass(&curve, &arcs, 0, 1.0).unwrap();
        assert!(b.is_degenerate());
        assert_eq!(b.start(), 0);
    }

    #[test]
    fn single_small_arc_gives_one_segment_bypass() {
        let curve = uniform_curve(4);
        // Positions: samples 0 and 1 adjacent with a small gap forward.
        let arcs = ArcSystem::new(&curve, vec![0, 1], vec![0.5, 9.0]).unwrap();
        let b = maximal_bypass(&curve, &arcs, 0, 1.0).unwrap();
        assert_eq!(b.partition, vec![0, 1]);
        assert_eq!(b.direction, 1);
    }

    #[test]
    fn not_on_trace_errors() {
        let curve = uniform_curve(4);
        let arcs = ArcSystem::new(&curve, vec![0, 1], vec![0.5, 0.5]).unwrap();
        assert!(matches!(
            maximal_bypass(&curve, &arcs, 3, 1.0),
            Err(Error::NotOnTrace)
        ));
    }

    #[test]
    fn empty_trace_gives_empty_detour() {
        let curve = uniform_curve(4);
        let arcs = ArcSystem::new(&curve, vec![], vec![]).unwrap();
        let d = covering_detour(&curve, &arcs, 1.0).unwrap();
        assert!(d.bypasses.is_empty());
    }

    #[test]
    fn single_point_trace_gives_one_degenerate_bypass() {
        let curve = uniform_curve(4);
        let arcs = ArcSystem::new(&curve, vec![2], vec![9.0]).unwrap();
        let d = covering_detour(&curve, &arcs, 1.0).unwrap();
        assert_eq!(d.bypasses.len(), 1);
        assert!(d.bypasses[0].is_degenerate());
        assert!(check_detour(&curve, &arcs, &d).all());
    }

    #[test]
    fn detour_covers_and_is_disjoint_on_a_mixed_instance() {
        let curve = uniform_curve(8);
        // Circle order mixes parameters; one big gap blocks the far side.
        let arcs = ArcSystem::new(
            &curve,
            vec![0, 5, 2, 7, 4],
            vec![0.4, 0.4, 0.4, 9.0, 0.4],
        )
        .unwrap();
        let d = covering_detour(&curve, &arcs, 1.0).unwrap();
        let checks = check_detour(&curve, &arcs, &d);
        assert!(checks.all(), "{checks:?} on {d:?}");
        assert!(d.bypasses.len() <= arcs.len());
        for b in &d.bypasses {
            assert!(check_bypass(&curve, &arcs, b, 1.0).is_ok());
        }
    }
}

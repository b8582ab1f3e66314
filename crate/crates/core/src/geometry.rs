//! Node placement: uniform annulus sampling, cognitive tx/rx pairs around
//! primary exclusive regions, and the hexagonal primary lattice.

use std::f64::consts::PI;
use std::io::{Read, Write};

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{EdgePolicy, NetworkConfig, MIN_PAIR_DISTANCE};
use crate::error::{Error, Result};
use crate::rng::{self, label, StreamRng};

/// Rejection attempts allowed per node before a placement is declared failed.
pub const RETRY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn polar(r: f64, theta: f64) -> Self {
        Self::new(r * theta.cos(), r * theta.sin())
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist2(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(self, other: Point) -> f64 {
        self.dist2(other).sqrt()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

/// Distance from a point at polar `(r, theta)` to the point `(r0, 0)`.
pub fn distance_to_per_edge(r: f64, theta: f64, r0: f64) -> f64 {
    (r * r + r0 * r0 - 2.0 * r0 * r * theta.cos())
        .max(0.0)
        .sqrt()
}

/// One uniform draw from the annulus `inner <= |p| <= outer`.
pub fn uniform_in_annulus<R: Rng + ?Sized>(rng: &mut R, inner: f64, outer: f64) -> Point {
    let u: f64 = rng.random();
    let v: f64 = rng.random();
    let r = (inner * inner + u * (outer * outer - inner * inner)).sqrt();
    Point::polar(r, 2.0 * PI * v)
}

/// `count` i.i.d. uniform points on the annulus, one substream per point.
pub fn sample_annulus(count: usize, inner: f64, outer: f64, seed: u64) -> Result<Vec<Point>> {
    if !(inner >= 0.0 && inner < outer && outer.is_finite()) {
        return Err(Error::domain(format!(
            "annulus needs 0 <= inner < outer, got [{inner}, {outer}]"
        )));
    }
    Ok((0..count)
        .into_par_iter()
        .map(|i| {
            uniform_in_annulus(
                &mut rng::stream(seed, &[label::POINT, i as u64]),
                inner,
                outer,
            )
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeCount {
    /// Poisson number of transmitters with mean `lambda * admissible area`.
    Poisson,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct NodePlacement {
    pub cognitive_tx: Vec<Point>,
    pub cognitive_rx: Vec<Point>,
    pub primary_tx: Vec<Point>,
    pub primary_rx: Vec<Point>,
    pub seed: u64,
    /// Fraction of candidate transmitter positions that were admissible.
    pub acceptance_ratio: f64,
}

impl NodePlacement {
    pub fn len(&self) -> usize {
        self.cognitive_tx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cognitive_tx.is_empty()
    }

    /// Replays the placement post-conditions against `config`.
    pub fn check_invariants(&self, config: &NetworkConfig) -> Result<()> {
        let fail = |m: String| Err(Error::Placement(m));
        if self.cognitive_rx.len() != self.cognitive_tx.len() && !self.cognitive_rx.is_empty() {
            return fail("tx/rx length mismatch".into());
        }
        let keep_out = config.per_radius + config.guard_band;
        // Positions are exact draws, so only rounding slack is allowed.
        let slack = 1e-9;
        for (i, tx) in self.cognitive_tx.iter().enumerate() {
            for p in &self.primary_tx {
                if tx.dist(*p) < keep_out - slack {
                    return fail(format!("cognitive tx {i} inside an exclusive region"));
                }
            }
            for p in &self.primary_rx {
                if tx.dist(*p) < config.guard_band - slack {
                    return fail(format!("cognitive tx {i} within ε_p of a primary rx"));
                }
            }
        }
        for (i, rx) in self.cognitive_rx.iter().enumerate() {
            let tx = self.cognitive_tx[i];
            let d = tx.dist(*rx);
            if d > config.dmax_at(tx.norm()) + slack || d < MIN_PAIR_DISTANCE - slack {
                return fail(format!("pair {i} separation {d} outside [d_min, D_max]"));
            }
            let interferers = self
                .cognitive_tx
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p)
                .chain(self.primary_tx.iter());
            for p in interferers {
                if rx.dist(*p) < config.rx_protect - slack {
                    return fail(format!("cognitive rx {i} within ε_c of an interferer"));
                }
            }
        }
        Ok(())
    }

    /// Writes the placement as CSV with columns `role,pair_id,x,y`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(writer);
        w.write_record(["role", "pair_id", "x", "y"])?;
        let groups: [(&str, &[Point]); 4] = [
            ("ctx", &self.cognitive_tx),
            ("crx", &self.cognitive_rx),
            ("ptx", &self.primary_tx),
            ("prx", &self.primary_rx),
        ];
        for (role, points) in groups {
            for (i, p) in points.iter().enumerate() {
                w.write_record([
                    role.to_string(),
                    i.to_string(),
                    p.x.to_string(),
                    p.y.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a placement written by [`NodePlacement::write_csv`]. The seed is
    /// not stored in the file and is set to 0.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            role: String,
            pair_id: usize,
            x: f64,
            y: f64,
        }
        let mut rows: Vec<Row> = Vec::new();
        for rec in csv::Reader::from_reader(reader).deserialize() {
            rows.push(rec?);
        }
        let mut out = NodePlacement {
            acceptance_ratio: 1.0,
            ..Default::default()
        };
        for role in ["ctx", "crx", "ptx", "prx"] {
            let mut pts: Vec<(usize, Point)> = rows
                .iter()
                .filter(|r| r.role == role)
                .map(|r| (r.pair_id, Point::new(r.x, r.y)))
                .collect();
            pts.sort_by_key(|p| p.0);
            if pts.iter().enumerate().any(|(i, p)| p.0 != i) {
                return Err(Error::Placement(format!(
                    "non-contiguous pair ids for role {role}"
                )));
            }
            let pts = pts.into_iter().map(|p| p.1).collect();
            match role {
                "ctx" => out.cognitive_tx = pts,
                "crx" => out.cognitive_rx = pts,
                "ptx" => out.primary_tx = pts,
                _ => out.primary_rx = pts,
            }
        }
        if let Some(r) = rows
            .iter()
            .find(|r| !["ctx", "crx", "ptx", "prx"].contains(&r.role.as_str()))
        {
            return Err(Error::Placement(format!("unknown role `{}`", r.role)));
        }
        Ok(out)
    }
}

/// Primary transmitter positions: the origin alone, or a hexagonal layout with
/// the configured nearest-neighbour spacing clipped to the network disc.
pub fn primary_transmitters(config: &NetworkConfig) -> Vec<Point> {
    let Some(spacing) = config.primary_spacing else {
        return vec![Point::ORIGIN];
    };
    let r = config.network_radius;
    let row = spacing * 3f64.sqrt() / 2.0;
    let jmax = (r / row).ceil() as i64;
    let imax = (r / spacing).ceil() as i64 + jmax;
    let mut pts = Vec::new();
    for j in -jmax..=jmax {
        for i in -imax..=imax {
            let p = Point::new(spacing * (i as f64 + 0.5 * j as f64), row * j as f64);
            if p.norm() <= r {
                pts.push(p);
            }
        }
    }
    // Keep the central primary first.
    pts.sort_by(|a, b| {
        a.norm()
            .total_cmp(&b.norm())
            .then(a.y.total_cmp(&b.y))
            .then(a.x.total_cmp(&b.x))
    });
    pts
}

/// Uniform grid over point indices for radius queries.
struct SpatialGrid {
    cell: f64,
    min: Point,
    nx: usize,
    ny: usize,
    cells: Vec<Vec<usize>>,
}

impl SpatialGrid {
    fn new(points: &[Point], cell: f64) -> Self {
        let (mut lo, mut hi) = (
            Point::new(f64::MAX, f64::MAX),
            Point::new(f64::MIN, f64::MIN),
        );
        for p in points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        if points.is_empty() {
            lo = Point::ORIGIN;
            hi = Point::ORIGIN;
        }
        // Cap the grid size; the cell only has to be at least the query radius.
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let cell = cell.max(span / 1024.0).max(f64::MIN_POSITIVE);
        let nx = ((hi.x - lo.x) / cell).floor() as usize + 1;
        let ny = ((hi.y - lo.y) / cell).floor() as usize + 1;
        let mut cells = vec![Vec::new(); nx * ny];
        for (i, p) in points.iter().enumerate() {
            let (cx, cy) = (
                ((p.x - lo.x) / cell) as usize,
                ((p.y - lo.y) / cell) as usize,
            );
            cells[cy * nx + cx].push(i);
        }
        Self {
            cell,
            min: lo,
            nx,
            ny,
            cells,
        }
    }

    /// True when some indexed point other than `skip` lies closer than `radius`.
    fn any_within(&self, points: &[Point], q: Point, radius: f64, skip: Option<usize>) -> bool {
        let r2 = radius * radius;
        let span = (radius / self.cell).ceil() as i64;
        let cx = ((q.x - self.min.x) / self.cell).floor() as i64;
        let cy = ((q.y - self.min.y) / self.cell).floor() as i64;
        for y in (cy - span).max(0)..=(cy + span).min(self.ny as i64 - 1) {
            for x in (cx - span).max(0)..=(cx + span).min(self.nx as i64 - 1) {
                for &i in &self.cells[y as usize * self.nx + x as usize] {
                    if Some(i) != skip && points[i].dist2(q) < r2 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn admissible_tx(p: Point, primaries: &[Point], keep_out: f64) -> bool {
    let k2 = keep_out * keep_out;
    primaries.iter().all(|q| p.dist2(*q) >= k2)
}

/// Samples cognitive transmitters only. Used where receivers are irrelevant,
/// for instance interference at the primary receiver.
pub fn sample_transmitters(
    config: &NetworkConfig,
    count: NodeCount,
    primaries: &[Point],
    seed: u64,
) -> Result<(Vec<Point>, f64)> {
    let keep_out = config.per_radius + config.guard_band;
    let (inner, outer) = (keep_out, config.network_radius);
    match count {
        NodeCount::Poisson => {
            let mean = config.density * PI * (outer * outer - inner * inner);
            let n = if mean > 0.0 {
                let dist = Poisson::new(mean).map_err(|e| Error::domain(e.to_string()))?;
                dist.sample(&mut rng::stream(seed, &[label::COUNT])) as usize
            } else {
                0
            };
            let candidates: Vec<Point> = (0..n)
                .into_par_iter()
                .map(|i| {
                    uniform_in_annulus(
                        &mut rng::stream(seed, &[label::CANDIDATE, i as u64]),
                        inner,
                        outer,
                    )
                })
                .collect();
            let kept: Vec<Point> = candidates
                .iter()
                .copied()
                .filter(|p| admissible_tx(*p, primaries, keep_out))
                .collect();
            let ratio = if n == 0 {
                1.0
            } else {
                kept.len() as f64 / n as f64
            };
            Ok((kept, ratio))
        }
        NodeCount::Fixed(n) => {
            let draws: Vec<Result<(Point, usize)>> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut r = rng::stream(seed, &[label::TX, i as u64]);
                    for attempt in 1..=RETRY_BUDGET {
                        let p = uniform_in_annulus(&mut r, inner, outer);
                        if admissible_tx(p, primaries, keep_out) {
                            return Ok((p, attempt));
                        }
                    }
                    Err(Error::Placement(format!(
                        "no admissible position for transmitter {i} after {RETRY_BUDGET} draws"
                    )))
                })
                .collect();
            let mut pts = Vec::with_capacity(n);
            let mut attempts = 0usize;
            for d in draws {
                let (p, a) = d?;
                pts.push(p);
                attempts += a;
            }
            let ratio = if n == 0 {
                1.0
            } else {
                n as f64 / attempts as f64
            };
            Ok((pts, ratio))
        }
    }
}

fn draw_receiver(
    config: &NetworkConfig,
    i: usize,
    tx: &[Point],
    tx_grid: &SpatialGrid,
    primaries: &[Point],
    rng: &mut StreamRng,
) -> Result<Point> {
    let own = tx[i];
    let dmax = config.dmax_at(own.norm());
    if dmax <= MIN_PAIR_DISTANCE {
        return Err(Error::Placement(format!(
            "D_max {dmax} below the minimum pair distance"
        )));
    }
    let eps_c = config.rx_protect;
    let e2 = eps_c * eps_c;
    for _ in 0..RETRY_BUDGET {
        let rx = own + uniform_in_annulus(rng, MIN_PAIR_DISTANCE, dmax);
        if config.edge_policy == EdgePolicy::Clip && rx.norm() > config.network_radius {
            continue;
        }
        if primaries.iter().any(|p| p.dist2(rx) < e2) {
            continue;
        }
        if tx_grid.any_within(tx, rx, eps_c, Some(i)) {
            continue;
        }
        return Ok(rx);
    }
    Err(Error::Placement(format!(
        "no admissible receiver for pair {i} after {RETRY_BUDGET} draws"
    )))
}

/// How the exclusive regions are treated when placing cognitive transmitters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlacementMode {
    #[default]
    Standard,
    /// Adds Poisson transmitters at density `λ` inside every PER plus guard
    /// band. Only for checking worst-case interference bounds; the result
    /// violates the placement invariants by construction.
    FillPers,
}

/// Poisson transmitters at the configured density inside each primary's
/// keep-out disc, clipped to the network disc.
pub fn fill_transmitters(
    config: &NetworkConfig,
    primaries: &[Point],
    seed: u64,
) -> Result<Vec<Point>> {
    let keep_out = config.per_radius + config.guard_band;
    let mean = config.density * PI * keep_out * keep_out;
    if mean <= 0.0 {
        return Ok(Vec::new());
    }
    let dist = Poisson::new(mean).map_err(|e| Error::domain(e.to_string()))?;
    let r2 = config.network_radius * config.network_radius;
    let mut pts = Vec::new();
    for (k, centre) in primaries.iter().enumerate() {
        let mut r = rng::stream(seed, &[label::FILL, k as u64]);
        let n = dist.sample(&mut r) as usize;
        for _ in 0..n {
            let p = *centre + uniform_in_annulus(&mut r, 0.0, keep_out);
            if p.norm() * p.norm() <= r2 {
                pts.push(p);
            }
        }
    }
    Ok(pts)
}

/// Samples a full network: primaries, cognitive transmitters outside every
/// PER plus guard band, and one receiver per transmitter within `D_max`.
pub fn place_network(config: &NetworkConfig, count: NodeCount, seed: u64) -> Result<NodePlacement> {
    place_network_with(config, count, PlacementMode::Standard, seed)
}

/// [`place_network`] with an explicit [`PlacementMode`]. The standard
/// transmitters are identical in both modes for the same seed, so a filled
/// placement is a superset of the standard one.
pub fn place_network_with(
    config: &NetworkConfig,
    count: NodeCount,
    mode: PlacementMode,
    seed: u64,
) -> Result<NodePlacement> {
    config.validated()?;
    let primary_tx = primary_transmitters(config);
    let primary_rx: Vec<Point> = primary_tx
        .iter()
        .map(|p| *p + Point::new(config.per_radius, 0.0))
        .collect();
    let (mut cognitive_tx, acceptance_ratio) =
        sample_transmitters(config, count, &primary_tx, seed)?;
    if mode == PlacementMode::FillPers {
        cognitive_tx.extend(fill_transmitters(config, &primary_tx, seed)?);
    }
    let grid = SpatialGrid::new(&cognitive_tx, config.rx_protect);
    let cognitive_rx = (0..cognitive_tx.len())
        .into_par_iter()
        .map(|i| {
            let mut r = rng::stream(seed, &[label::RX, i as u64]);
            draw_receiver(config, i, &cognitive_tx, &grid, &primary_tx, &mut r)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NodePlacement {
        cognitive_tx,
        cognitive_rx,
        primary_tx,
        primary_rx,
        seed,
        acceptance_ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sublattice {
    /// Points `(2√3 k, 2m)`.
    Even,
    /// Points `(√3(2k+1), 2m+1)`.
    Odd,
}

/// Densest packing of unit-radius exclusive regions, in units of `R₀`.
#[derive(Debug, Clone)]
pub struct HexLattice {
    pub truncation: usize,
    pub points: Vec<(Sublattice, Point)>,
}

impl HexLattice {
    pub fn new(truncation: usize) -> Result<Self> {
        if truncation == 0 {
            return Err(Error::domain("lattice truncation must be at least 1"));
        }
        let k = truncation as i64;
        let s3 = 3f64.sqrt();
        let mut points = Vec::with_capacity(2 * (2 * truncation + 1).pow(2));
        for m in -k..=k {
            for j in -k..=k {
                points.push((
                    Sublattice::Even,
                    Point::new(2.0 * s3 * j as f64, 2.0 * m as f64),
                ));
            }
        }
        for m in -k..=k {
            for j in -k..=k {
                points.push((
                    Sublattice::Odd,
                    Point::new(s3 * (2 * j + 1) as f64, (2 * m + 1) as f64),
                ));
            }
        }
        Ok(Self { truncation, points })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PowerMode;

    #[test]
    fn annulus_edge_cases() {
        assert!(sample_annulus(0, 1.0, 10.0, 1).unwrap().is_empty());
        assert!(sample_annulus(3, 2.0, 2.0, 1).is_err());
        assert!(sample_annulus(3, 3.0, 2.0, 1).is_err());
        for p in sample_annulus(10_000, 1.0, 10.0, 5).unwrap() {
            let r = p.norm();
            assert!((1.0 - 1e-12..=10.0 + 1e-12).contains(&r));
        }
    }

    #[test]
    fn annulus_first_moment() {
        // E[r] = (2/3)(b^3 - a^3)/(b^2 - a^2)
        let expected: f64 = 2.0 / 3.0 * (1000.0 - 1.0) / (100.0 - 1.0);
        assert!((expected - 6.72727).abs() < 1e-5);
        let pts = sample_annulus(1_000_000, 1.0, 10.0, 42).unwrap();
        let mean = pts.iter().map(|p| p.norm()).sum::<f64>() / pts.len() as f64;
        // std of r is about 2.1, so the standard error is ~2e-3.
        assert!((mean - expected).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn per_edge_distance() {
        assert_eq!(distance_to_per_edge(2.0, 0.0, 2.0), 0.0);
        assert!((distance_to_per_edge(4.0, PI, 2.0) - 6.0).abs() < 1e-12);
        assert!((distance_to_per_edge(5.0, PI / 3.0, 2.0) - 19f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hex_lattice_counts_and_neighbours() {
        let lat = HexLattice::new(1).unwrap();
        assert_eq!(lat.points.len(), 18);
        let nearest_even = lat
            .points
            .iter()
            .filter(|(s, p)| *s == Sublattice::Even && p.norm() > 0.0)
            .map(|(_, p)| p.norm())
            .fold(f64::MAX, f64::min);
        assert!((nearest_even - 2.0).abs() < 1e-15);
        assert!(lat.points.iter().any(|(_, p)| *p == Point::ORIGIN));
        assert!(HexLattice::new(0).is_err());
        // All nearest neighbours of the origin sit at distance 2 (touching PERs).
        let nn = lat
            .points
            .iter()
            .map(|(_, p)| p.norm())
            .filter(|&d| d > 0.0)
            .fold(f64::MAX, f64::min);
        assert!((nn - 2.0).abs() < 1e-12);
    }

    #[test]
    fn empty_fixed_placement() {
        let cfg = NetworkConfig::default();
        let pl = place_network(&cfg, NodeCount::Fixed(0), 3).unwrap();
        assert!(pl.is_empty());
        assert_eq!(pl.primary_tx, vec![Point::ORIGIN]);
        assert_eq!(pl.primary_rx, vec![Point::new(2.0, 0.0)]);
    }

    #[test]
    fn placements_satisfy_invariants() {
        let cfg = NetworkConfig::default();
        for seed in 0..5 {
            let pl = place_network(&cfg, NodeCount::Poisson, seed).unwrap();
            pl.check_invariants(&cfg).unwrap();
            assert_eq!(pl.cognitive_rx.len(), pl.cognitive_tx.len());
        }
        let scaled = NetworkConfig {
            mode: PowerMode::DistanceScaledPower,
            power_exponent: 1.0,
            ..Default::default()
        };
        let pl = place_network(&scaled, NodeCount::Fixed(200), 9).unwrap();
        pl.check_invariants(&scaled).unwrap();
    }

    #[test]
    fn hex_primaries_and_exclusions() {
        let cfg = NetworkConfig {
            network_radius: 30.0,
            per_radius: 2.0,
            guard_band: 0.5,
            primary_spacing: Some(8.0),
            ..Default::default()
        };
        let prim = primary_transmitters(&cfg);
        assert_eq!(prim[0], Point::ORIGIN);
        assert!(prim.len() > 7);
        let pl = place_network(&cfg, NodeCount::Fixed(300), 11).unwrap();
        pl.check_invariants(&cfg).unwrap();
        assert!(pl.acceptance_ratio < 1.0);
    }

    #[test]
    fn impossible_exclusions_fail_with_placement_error() {
        let cfg = NetworkConfig {
            network_radius: 10.0,
            per_radius: 2.0,
            guard_band: 3.0,
            primary_spacing: Some(4.0),
            ..Default::default()
        };
        assert!(matches!(
            place_network(&cfg, NodeCount::Fixed(5), 1),
            Err(Error::Placement(_))
        ));
    }

    #[test]
    fn filled_pers_extend_the_standard_placement() {
        let cfg = NetworkConfig::default();
        let std = place_network(&cfg, NodeCount::Poisson, 8).unwrap();
        let filled =
            place_network_with(&cfg, NodeCount::Poisson, PlacementMode::FillPers, 8).unwrap();
        assert_eq!(&filled.cognitive_tx[..std.len()], &std.cognitive_tx[..]);
        assert!(filled.len() > std.len());
        let keep_out = cfg.per_radius + cfg.guard_band;
        assert!(filled.cognitive_tx[std.len()..]
            .iter()
            .all(|p| p.norm() < keep_out));
        assert!(filled.check_invariants(&cfg).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let cfg = NetworkConfig::default();
        let pl = place_network(&cfg, NodeCount::Fixed(20), 4).unwrap();
        let mut buf = Vec::new();
        pl.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("role,pair_id,x,y\n"));
        let back = NodePlacement::read_csv(buf.as_slice()).unwrap();
        assert_eq!(back.cognitive_tx, pl.cognitive_tx);
        assert_eq!(back.cognitive_rx, pl.cognitive_rx);
        assert_eq!(back.primary_rx, pl.primary_rx);
        assert!(NodePlacement::read_csv("role,pair_id,x,y\nzzz,0,1,1\n".as_bytes()).is_err());
    }
}

//! Residual records shared by the compatibility, balance, and von Kármán suites,
//! plus seeded probe sets.

use crate::fields::FieldBundle;
use crate::tensor::Vec2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Bulk,
    Interface,
    Point,
}

/// Pass thresholds on the relative residual, per region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub bulk: f64,
    pub interface: f64,
    pub point: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { bulk: 1e-7, interface: 1e-6, point: 1e-4 }
    }
}

impl Tolerances {
    pub fn for_region(&self, r: Region) -> f64 {
        match r {
            Region::Bulk => self.bulk,
            Region::Interface => self.interface,
            Region::Point => self.point,
        }
    }
}

/// Statistics of one equation over its probes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualRecord {
    pub equation: String,
    pub region: Region,
    pub probes: usize,
    pub max_raw: f64,
    pub mean_raw: f64,
    pub max_relative: f64,
    /// the worst probe: location and, for vector equations, the component values
    pub worst: Vec<f64>,
    pub note: Option<String>,
}

impl ResidualRecord {
    pub fn passes(&self, tol: f64) -> bool {
        self.probes > 0 && self.max_relative <= tol
    }
}

/// raw / max(largest |term|, MIN_POSITIVE), and 0 when raw = 0.
pub fn relative(raw: f64, terms: &[f64]) -> f64 {
    if raw == 0.0 {
        return 0.0;
    }
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    raw.abs() / scale.max(f64::MIN_POSITIVE)
}

/// Accumulates one equation's residuals.
#[derive(Clone, Debug)]
pub struct Accumulator {
    equation: String,
    region: Region,
    count: usize,
    sum_raw: f64,
    max_raw: f64,
    max_rel: f64,
    worst: Vec<f64>,
    note: Option<String>,
}

impl Accumulator {
    pub fn new(equation: &str, region: Region) -> Self {
        Accumulator {
            equation: equation.into(),
            region,
            count: 0,
            sum_raw: 0.0,
            max_raw: 0.0,
            max_rel: 0.0,
            worst: vec![],
            note: None,
        }
    }

    /// Scalar residual: LHS terms (summed) against RHS terms (summed).
    pub fn push_terms(&mut self, lhs: &[f64], rhs: &[f64], at: &[f64]) {
        let raw = lhs.iter().sum::<f64>() - rhs.iter().sum::<f64>();
        let mut terms = lhs.to_vec();
        terms.extend_from_slice(rhs);
        self.push(raw, relative(raw, &terms), at);
    }

    /// A residual with an explicit magnitude scale.
    pub fn push(&mut self, raw: f64, rel: f64, at: &[f64]) {
        let raw = raw.abs();
        let rel = if raw.is_nan() { f64::INFINITY } else { rel };
        self.count += 1;
        self.sum_raw += raw;
        if raw > self.max_raw || raw.is_nan() {
            self.max_raw = raw;
        }
        if self.worst.is_empty() || rel > self.max_rel {
            self.worst = at.to_vec();
        }
        self.max_rel = self.max_rel.max(rel);
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.note = Some(n.into());
        self
    }

    pub fn set_note(&mut self, n: impl Into<String>) {
        self.note = Some(n.into());
    }

    pub fn finish(self) -> ResidualRecord {
        ResidualRecord {
            equation: self.equation,
            region: self.region,
            probes: self.count,
            max_raw: self.max_raw,
            mean_raw: if self.count > 0 { self.sum_raw / self.count as f64 } else { 0.0 },
            max_relative: self.max_rel,
            worst: self.worst,
            note: self.note,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ResidualSet {
    pub records: Vec<ResidualRecord>,
}

impl ResidualSet {
    pub fn push(&mut self, r: ResidualRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: ResidualSet) {
        self.records.extend(other.records);
    }

    pub fn get(&self, equation: &str) -> Option<&ResidualRecord> {
        self.records.iter().find(|r| r.equation == equation)
    }

    pub fn max_relative(&self, region: Region) -> f64 {
        self.records.iter().filter(|r| r.region == region).map(|r| r.max_relative).fold(0.0, f64::max)
    }
}

/// Probe locations for the residual suites.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeSet {
    pub seed: u64,
    #[serde(skip)]
    pub bulk: Vec<Vec2>,
    /// (interface index, arclength)
    pub interface: Vec<(usize, f64)>,
    /// loop radii around O
    pub loop_radii: Vec<f64>,
}

impl ProbeSet {
    /// Uniform bulk points in the disk of radius `scale` about O (or the
    /// coordinate origin), kept 1e−3·scale away from S and O; interface
    /// stations uniform on each curve away from its ends.
    pub fn generate(bundle: &FieldBundle, bulk_count: usize, interface_count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let center = bundle.origin.unwrap_or_else(Vec2::zeros);
        let r = bundle.scale;
        let keep = 1e-3 * r;
        let mut bulk = Vec::with_capacity(bulk_count);
        let mut guard = 0;
        while bulk.len() < bulk_count && guard < 100 * bulk_count + 100 {
            guard += 1;
            let rad = r * rng.gen::<f64>().sqrt();
            let th = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let x = center + Vec2::new(rad * th.cos(), rad * th.sin());
            let near_o = bundle.origin.map(|o| (x - o).norm() < keep).unwrap_or(false);
            if near_o || bundle.interfaces.iter().any(|s| s.distance(x) < keep) {
                continue;
            }
            bulk.push(x);
        }
        let mut interface = vec![];
        for (i, s) in bundle.interfaces.iter().enumerate() {
            let len = s.length();
            let (lo, hi) = if s.is_closed() { (0.0, len) } else { (0.02 * len, 0.98 * len) };
            for _ in 0..interface_count {
                interface.push((i, rng.gen_range(lo..hi)));
            }
        }
        let loop_radii = vec![0.05 * r, 0.1 * r, 0.2 * r, 0.4 * r];
        ProbeSet { seed, bulk, interface, loop_radii }
    }

    pub fn with_loop_radii(mut self, radii: Vec<f64>) -> Self {
        self.loop_radii = radii;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_scaling() {
        assert_eq!(relative(0.0, &[0.0]), 0.0);
        assert!((relative(1e-9, &[2.0, -4.0]) - 2.5e-10).abs() < 1e-24);
        assert!(relative(1e-300, &[0.0]).is_finite());
    }

    #[test]
    fn accumulator_tracks_worst() {
        let mut a = Accumulator::new("eq", Region::Bulk);
        a.push_terms(&[1.0, 1.0], &[2.0], &[0.0]);
        a.push_terms(&[1.0], &[0.5], &[1.0]);
        let r = a.finish();
        assert_eq!(r.probes, 2);
        assert!((r.max_relative - 0.5).abs() < 1e-15);
        assert_eq!(r.worst, vec![1.0]);
    }
}

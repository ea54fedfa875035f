use crate::error::{Result, VkError};
use crate::numerics::Jet;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// A·cos(kθ + φ). A constant is k = 0, φ = 0; sin kθ is φ = −π/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Harmonic {
    pub amplitude: f64,
    pub wavenumber: f64,
    pub phase: f64,
}

impl Harmonic {
    pub fn constant(a: f64) -> Self {
        Harmonic { amplitude: a, wavenumber: 0.0, phase: 0.0 }
    }
    pub fn cos(a: f64, k: f64) -> Self {
        Harmonic { amplitude: a, wavenumber: k, phase: 0.0 }
    }
    pub fn sin(a: f64, k: f64) -> Self {
        Harmonic { amplitude: a, wavenumber: k, phase: -FRAC_PI_2 }
    }

    /// n-th derivative in θ.
    fn deriv(&self, theta: f64, n: u32) -> f64 {
        if n > 0 && self.wavenumber == 0.0 {
            return 0.0;
        }
        self.amplitude * self.wavenumber.powi(n as i32) * (self.wavenumber * theta + self.phase + n as f64 * FRAC_PI_2).cos()
    }
}

/// One angular sector [start, end] with its own harmonic expansion, evaluated
/// in the unwrapped angle of that interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfilePiece {
    pub start: f64,
    pub end: f64,
    pub terms: Vec<Harmonic>,
}

/// Angular factor g(θ) of a conical field w = r·g(θ).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngularProfile {
    pieces: Vec<ProfilePiece>,
}

impl AngularProfile {
    /// Single expansion on (−π, π].
    pub fn harmonic(terms: Vec<Harmonic>) -> Result<Self> {
        Self::piecewise(vec![ProfilePiece { start: -PI, end: PI, terms }])
    }

    /// Contiguous pieces covering one turn; g must be continuous at every
    /// boundary including the wrap-around.
    pub fn piecewise(pieces: Vec<ProfilePiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(VkError::Precondition("profile needs at least one piece".into()));
        }
        for w in pieces.windows(2) {
            if (w[0].end - w[1].start).abs() > 1e-12 {
                return Err(VkError::Precondition(format!("pieces not contiguous at {}", w[0].end)));
            }
        }
        let first = &pieces[0];
        let last = &pieces[pieces.len() - 1];
        if (last.end - first.start - 2.0 * PI).abs() > 1e-12 {
            return Err(VkError::Precondition("pieces must span exactly one turn".into()));
        }
        for p in &pieces {
            if !(p.end > p.start) {
                return Err(VkError::Precondition(format!("empty piece [{}, {}]", p.start, p.end)));
            }
        }
        let profile = AngularProfile { pieces };
        let scale = profile.amplitude_scale().max(1e-300);
        for i in 0..profile.pieces.len() {
            let j = (i + 1) % profile.pieces.len();
            let left = profile.piece_deriv(i, profile.pieces[i].end, 0);
            let right = profile.piece_deriv(j, profile.pieces[j].start, 0);
            if (left - right).abs() > 1e-10 * scale {
                return Err(VkError::Precondition(format!(
                    "profile discontinuous at theta = {}: {left} vs {right}",
                    profile.pieces[i].end
                )));
            }
        }
        Ok(profile)
    }

    pub fn pieces(&self) -> &[ProfilePiece] {
        &self.pieces
    }

    fn amplitude_scale(&self) -> f64 {
        self.pieces.iter().flat_map(|p| p.terms.iter()).map(|h| h.amplitude.abs()).fold(0.0, f64::max)
    }

    /// True when one piece with integer wavenumbers covers the turn.
    pub fn is_smooth_periodic(&self) -> bool {
        self.pieces.len() == 1
            && self.pieces[0].terms.iter().all(|h| (h.wavenumber - h.wavenumber.round()).abs() < 1e-14)
    }

    /// Piece containing θ and θ unwrapped into that piece's interval.
    pub fn locate(&self, theta: f64) -> (usize, f64) {
        let start = self.pieces[0].start;
        let mut t = (theta - start).rem_euclid(2.0 * PI) + start;
        if t >= start + 2.0 * PI {
            t -= 2.0 * PI;
        }
        let idx = self.pieces.iter().position(|p| t >= p.start && t < p.end).unwrap_or(self.pieces.len() - 1);
        (idx, t)
    }

    pub fn piece_deriv(&self, piece: usize, theta: f64, n: u32) -> f64 {
        self.pieces[piece].terms.iter().map(|h| h.deriv(theta, n)).sum()
    }

    /// g^(n)(θ) away from piece boundaries.
    pub fn deriv(&self, theta: f64, n: u32) -> f64 {
        let (i, t) = self.locate(theta);
        self.piece_deriv(i, t, n)
    }

    pub fn g(&self, theta: f64) -> f64 {
        self.deriv(theta, 0)
    }

    pub fn piece_jet(&self, piece: usize, theta: &Jet) -> Jet {
        let mut out = Jet::zero();
        for h in &self.pieces[piece].terms {
            if h.wavenumber == 0.0 {
                out = out + h.amplitude * h.phase.cos();
            } else {
                out += (*theta * h.wavenumber + h.phase).cos() * h.amplitude;
            }
        }
        out
    }

    /// Boundaries as (angle, g, g′ just after, g′ just before) in ccw sense.
    pub fn boundaries(&self) -> Vec<(f64, f64, f64, f64)> {
        let n = self.pieces.len();
        (0..n)
            .map(|j| {
                let i = (j + n - 1) % n;
                let b = self.pieces[j].start;
                let before_angle = if j == 0 { self.pieces[i].end } else { b };
                (
                    b,
                    self.piece_deriv(j, b, 0),
                    self.piece_deriv(j, b, 1),
                    self.piece_deriv(i, before_angle, 1),
                )
            })
            .collect()
    }
}

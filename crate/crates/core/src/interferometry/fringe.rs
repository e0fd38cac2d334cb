use serde::Serialize;

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FringePoint {
    /// Injected relative phase, rad.
    pub phi: f64,
    /// Probability of detecting the atom in `|g⟩`.
    pub p_g: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FringeResult {
    pub points: Vec<FringePoint>,
    pub visibility: f64,
}

impl FringeResult {
    pub fn from_points(points: Vec<FringePoint>) -> Result<Self> {
        let visibility = visibility(&points)?;
        Ok(Self { points, visibility })
    }
}

/// `(max − min) / (max + min)` of `p_g` over the scan; zero when every
/// probability vanishes.
pub fn visibility(points: &[FringePoint]) -> Result<f64> {
    match points.len() {
        0 => return Err(Error::Empty("fringe points")),
        1 => return Err(invalid("points", "visibility needs at least two points")),
        _ => {}
    }
    let (lo, hi) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.p_g), hi.max(p.p_g))
        });
    if hi + lo == 0.0 {
        return Ok(0.0);
    }
    Ok((hi - lo) / (hi + lo))
}

/// Contrast from the first Fourier harmonic of a uniform phase scan:
/// `2|⟨p_g e^{−iφ}⟩| / ⟨p_g⟩`.
///
/// Equals the visibility for a sinusoidal fringe, whatever its phase
/// offset, so it suits fringes shifted by a detuning.
pub fn harmonic_contrast(points: &[FringePoint]) -> Result<f64> {
    if points.len() < 3 {
        return Err(invalid("points", "harmonic contrast needs at least three points"));
    }
    let m = points.len() as f64;
    let mean = points.iter().map(|p| p.p_g).sum::<f64>() / m;
    if mean == 0.0 {
        return Ok(0.0);
    }
    let h = points
        .iter()
        .map(|p| num_complex::Complex64::from_polar(p.p_g, -p.phi))
        .sum::<num_complex::Complex64>()
        / m;
    Ok(2.0 * h.norm() / mean)
}

/// `count` equally spaced phases covering `[0, 2π)`.
pub fn phase_scan(count: usize) -> Vec<f64> {
    (0..count)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / count as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(v: f64) -> Vec<FringePoint> {
        phase_scan(32)
            .into_iter()
            .map(|phi| FringePoint {
                phi,
                p_g: 0.5 * (1.0 + v * phi.cos()),
            })
            .collect()
    }

    #[test]
    fn full_contrast() {
        assert!((visibility(&sample(1.0)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn flat_fringe() {
        assert_eq!(visibility(&sample(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn half_contrast() {
        assert!((visibility(&sample(0.5)).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn harmonic_contrast_ignores_offsets() {
        let pts: Vec<FringePoint> = phase_scan(32)
            .into_iter()
            .map(|phi| FringePoint { phi, p_g: 0.5 * (1.0 - 0.3 * (phi + 0.77).cos()) })
            .collect();
        assert!((harmonic_contrast(&pts).unwrap() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn all_zero_and_empty() {
        let zeros = vec![FringePoint { phi: 0.0, p_g: 0.0 }; 3];
        assert_eq!(visibility(&zeros).unwrap(), 0.0);
        assert!(matches!(visibility(&[]), Err(Error::Empty(_))));
        assert!(visibility(&zeros[..1]).is_err());
    }
}

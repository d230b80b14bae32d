//! Binary PPM heat maps of sweep grids.
//!
//! Image row `i` is `axis1[i]`, column `j` is `axis2[j]`. Values map linearly
//! onto `t ∈ [0, 1]` between the finite minimum and maximum, and then to
//! `(255t, 64 + 128t, 255(1 − t))`, so every channel is monotone in the value.
//! NaN cells are black, which no finite value produces.

use std::path::Path;

use crate::error::{JanusError, Result};
use crate::sweep::{write_atomic, SweepGrid};

pub const NAN_COLOR: [u8; 3] = [0, 0, 0];

pub fn color(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0);
    [(255.0 * t).round() as u8, (64.0 + 128.0 * t).round() as u8, (255.0 * (1.0 - t)).round() as u8]
}

/// Encodes a row-major `height × width` grid as a P6 image.
pub fn heatmap_ppm(values: &[f64], width: usize, height: usize) -> Result<Vec<u8>> {
    if width == 0 || height == 0 || values.len() != width * height {
        return Err(JanusError::EmptyGrid);
    }
    let (lo, hi) = values
        .iter()
        .filter(|v| v.is_finite())
        .fold(None, |acc: Option<(f64, f64)>, &v| Some(acc.map_or((v, v), |(a, b)| (a.min(v), b.max(v)))))
        .ok_or(JanusError::EmptyGrid)?;
    let span = hi - lo;
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.reserve(3 * values.len());
    for &v in values {
        let px = if !v.is_finite() {
            NAN_COLOR
        } else if span > 0.0 {
            color((v - lo) / span)
        } else {
            color(0.5)
        };
        out.extend_from_slice(&px);
    }
    Ok(out)
}

pub fn render_heatmap(grid: &SweepGrid, path: &Path) -> Result<()> {
    let bytes = heatmap_ppm(&grid.values, grid.axis2.len(), grid.axis1.len())?;
    write_atomic(path, &bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header_len(w: usize, h: usize) -> usize {
        format!("P6\n{w} {h}\n255\n").len()
    }

    #[test]
    fn constant_grid_single_color() {
        let img = heatmap_ppm(&[3.0; 12], 4, 3).unwrap();
        let body = &img[header_len(4, 3)..];
        assert_eq!(body.len(), 36);
        assert!(body.chunks(3).all(|px| px == color(0.5)));
    }

    #[test]
    fn file_size_arithmetic() {
        let img = heatmap_ppm(&vec![1.0; 201 * 201], 201, 201).unwrap();
        assert_eq!(img.len(), header_len(201, 201) + 3 * 201 * 201);
    }

    #[test]
    fn ramp_is_monotone() {
        let values: Vec<f64> = (0..50).map(|i| (i as f64).powf(1.7)).collect();
        let img = heatmap_ppm(&values, 50, 1).unwrap();
        let px: Vec<&[u8]> = img[header_len(50, 1)..].chunks(3).collect();
        for w in px.windows(2) {
            assert!(w[1][0] >= w[0][0] && w[1][1] >= w[0][1] && w[1][2] <= w[0][2]);
        }
        assert_eq!(px[0], color(0.0));
        assert_eq!(px[49], color(1.0));
    }

    #[test]
    fn nan_cells_black() {
        let img = heatmap_ppm(&[1.0, f64::NAN, 2.0, 3.0], 2, 2).unwrap();
        let px: Vec<&[u8]> = img[header_len(2, 2)..].chunks(3).collect();
        assert_eq!(px[1], NAN_COLOR);
        assert!(px.iter().enumerate().all(|(i, p)| i == 1 || *p != NAN_COLOR));
    }

    #[test]
    fn all_nan_rejected() {
        assert!(matches!(heatmap_ppm(&[f64::NAN; 4], 2, 2), Err(JanusError::EmptyGrid)));
        assert!(heatmap_ppm(&[1.0; 3], 2, 2).is_err());
    }
}

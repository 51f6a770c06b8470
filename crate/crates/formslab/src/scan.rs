//! Grid scans of a scalar density over a chart.
//!
//! A scan certifies a sign only at its sample points. The reduction is a
//! min/max with ties broken by the lexicographically smallest grid index, so
//! results do not depend on how rayon splits the work.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, FormError};
use crate::form::Chart;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanVerdict {
    Positive,
    NonPositive,
}

/// Sign pattern of the sampled density.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DensitySign {
    Positive,
    Negative,
    Indefinite,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub chart: String,
    pub resolution: Vec<usize>,
    pub sample_count: usize,
    pub min_density: f64,
    pub max_density: f64,
    pub argmin: Vec<f64>,
    pub argmax: Vec<f64>,
    /// Chart label holding the minimum (differs from `chart` only for merged reports).
    pub argmin_chart: String,
    pub verdict: ScanVerdict,
}

impl ScanReport {
    pub fn sign(&self) -> DensitySign {
        if self.min_density > 0.0 {
            DensitySign::Positive
        } else if self.max_density < 0.0 {
            DensitySign::Negative
        } else {
            DensitySign::Indefinite
        }
    }

    /// Nonvanishing with a constant sign at every sample.
    pub fn nondegenerate(&self) -> bool {
        self.sign() != DensitySign::Indefinite
    }

    pub fn summary(&self) -> String {
        let sign = match self.sign() {
            DensitySign::Positive => "positive",
            DensitySign::Negative => "negative",
            DensitySign::Indefinite => "not of constant sign",
        };
        format!(
            "density {sign} at {} sample points (min {:e}, max {:e})",
            self.sample_count, self.min_density, self.max_density
        )
    }

    /// Combines scans of several charts covering one manifold.
    pub fn merge(self, other: ScanReport) -> ScanReport {
        let (min_density, argmin, argmin_chart) = if other.min_density < self.min_density {
            (other.min_density, other.argmin, other.argmin_chart)
        } else {
            (self.min_density, self.argmin, self.argmin_chart)
        };
        let (max_density, argmax) = if other.max_density > self.max_density {
            (other.max_density, other.argmax)
        } else {
            (self.max_density, self.argmax)
        };
        let nan_free =
            self.verdict == ScanVerdict::Positive && other.verdict == ScanVerdict::Positive;
        ScanReport {
            chart: format!("{}+{}", self.chart, other.chart),
            resolution: self.resolution,
            sample_count: self.sample_count + other.sample_count,
            min_density,
            max_density,
            argmin,
            argmax,
            argmin_chart,
            verdict: if nan_free && min_density > 0.0 {
                ScanVerdict::Positive
            } else {
                ScanVerdict::NonPositive
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct Grid {
    samples: Vec<Vec<f64>>,
    resolution: Vec<usize>,
}

impl Grid {
    pub fn new(chart: &Chart, resolution: &[usize]) -> Result<Grid, FormError> {
        if resolution.len() != chart.dimension() {
            return Err(invalid(
                "resolution",
                format!(
                    "expected {} entries, got {}",
                    chart.dimension(),
                    resolution.len()
                ),
            ));
        }
        if resolution.contains(&0) {
            return Err(invalid(
                "resolution",
                "every axis needs at least one sample",
            ));
        }
        let samples = chart
            .axes()
            .iter()
            .zip(resolution)
            .map(|(a, &n)| a.samples(n))
            .collect();
        Ok(Grid {
            samples,
            resolution: resolution.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.resolution.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Point for a row-major flat index (axis 0 varies slowest).
    pub fn point(&self, mut flat: usize, out: &mut [f64]) {
        for axis in (0..self.resolution.len()).rev() {
            let n = self.resolution[axis];
            out[axis] = self.samples[axis][flat % n];
            flat /= n;
        }
    }
}

#[derive(Clone, Copy)]
struct Extremes {
    min: (f64, usize),
    max: (f64, usize),
    non_finite: usize,
}

impl Extremes {
    fn identity() -> Extremes {
        Extremes {
            min: (f64::INFINITY, usize::MAX),
            max: (f64::NEG_INFINITY, usize::MAX),
            non_finite: 0,
        }
    }

    fn observe(mut self, value: f64, index: usize) -> Extremes {
        if !value.is_finite() {
            self.non_finite += 1;
            return self;
        }
        if value < self.min.0 || (value == self.min.0 && index < self.min.1) {
            self.min = (value, index);
        }
        if value > self.max.0 || (value == self.max.0 && index < self.max.1) {
            self.max = (value, index);
        }
        self
    }

    fn combine(self, other: Extremes) -> Extremes {
        let mut out = self;
        if other.min.0 < out.min.0 || (other.min.0 == out.min.0 && other.min.1 < out.min.1) {
            out.min = other.min;
        }
        if other.max.0 > out.max.0 || (other.max.0 == out.max.0 && other.max.1 < out.max.1) {
            out.max = other.max;
        }
        out.non_finite += other.non_finite;
        out
    }
}

/// Samples `density` at every grid point of `chart`.
pub fn scan<F>(
    label: &str,
    chart: &Arc<Chart>,
    resolution: &[usize],
    density: F,
) -> Result<ScanReport, FormError>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let grid = Grid::new(chart, resolution)?;
    let dim = chart.dimension();
    let ext = (0..grid.len())
        .into_par_iter()
        .fold(
            || (Extremes::identity(), vec![0.0; dim]),
            |(acc, mut buf), i| {
                grid.point(i, &mut buf);
                let v = density(&buf);
                (acc.observe(v, i), buf)
            },
        )
        .map(|(e, _)| e)
        .reduce(Extremes::identity, Extremes::combine);

    let mut argmin = vec![0.0; dim];
    let mut argmax = vec![0.0; dim];
    if ext.min.1 != usize::MAX {
        grid.point(ext.min.1, &mut argmin);
        grid.point(ext.max.1, &mut argmax);
    }
    let (min_density, max_density) = if ext.non_finite > 0 {
        (f64::NAN, f64::NAN)
    } else {
        (ext.min.0, ext.max.0)
    };
    let verdict = if ext.non_finite == 0 && min_density > 0.0 {
        ScanVerdict::Positive
    } else {
        ScanVerdict::NonPositive
    };
    Ok(ScanReport {
        chart: label.to_string(),
        resolution: resolution.to_vec(),
        sample_count: grid.len(),
        min_density,
        max_density,
        argmin,
        argmax,
        argmin_chart: label.to_string(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::Axis;

    #[test]
    fn grid_enumerates_row_major() {
        let c = Chart::new(vec![
            Axis::interval("a", 0.0, 1.0),
            Axis::periodic("b", 4.0),
        ])
        .unwrap();
        let g = Grid::new(&c, &[3, 2]).unwrap();
        let mut p = [0.0; 2];
        let pts: Vec<[f64; 2]> = (0..g.len())
            .map(|i| {
                g.point(i, &mut p);
                p
            })
            .collect();
        assert_eq!(
            pts,
            vec![
                [0.0, 0.0],
                [0.0, 2.0],
                [0.5, 0.0],
                [0.5, 2.0],
                [1.0, 0.0],
                [1.0, 2.0]
            ]
        );
    }

    #[test]
    fn ties_break_toward_smallest_index() {
        let c = Chart::new(vec![Axis::interval("a", 0.0, 1.0)]).unwrap();
        let r = scan("flat", &c, &[11], |_| 1.0).unwrap();
        assert_eq!(r.argmin, vec![0.0]);
        assert_eq!(r.argmax, vec![0.0]);
        assert_eq!(r.verdict, ScanVerdict::Positive);
    }

    #[test]
    fn non_finite_density_is_never_positive() {
        let c = Chart::new(vec![Axis::interval("a", 0.0, 1.0)]).unwrap();
        let r = scan("nan", &c, &[5], |p| if p[0] > 0.6 { f64::NAN } else { 1.0 }).unwrap();
        assert_eq!(r.verdict, ScanVerdict::NonPositive);
        assert!(r.min_density.is_nan());
    }

    #[test]
    fn resolution_must_match_chart() {
        let c = Chart::new(vec![Axis::interval("a", 0.0, 1.0)]).unwrap();
        assert!(scan("x", &c, &[2, 2], |_| 1.0).is_err());
        assert!(scan("x", &c, &[0], |_| 1.0).is_err());
    }

    #[test]
    fn merge_keeps_global_extremes() {
        let c = Chart::new(vec![Axis::interval("a", 0.0, 1.0)]).unwrap();
        let a = scan("A", &c, &[5], |p| 1.0 + p[0]).unwrap();
        let b = scan("B", &c, &[5], |p| 0.5 + p[0]).unwrap();
        let m = a.merge(b);
        assert_eq!(m.min_density, 0.5);
        assert_eq!(m.argmin_chart, "B");
        assert_eq!(m.max_density, 2.0);
        assert_eq!(m.sample_count, 10);
    }
}

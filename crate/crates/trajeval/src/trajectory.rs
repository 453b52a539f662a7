//! Timestamped pose sequences in named frames, with interpolated lookup,
//! arc length, time shifting, and nearest-timestamp association.

use crate::geometry::{interpolate, Pose};
use crate::{Error, Result};

/// One timestamped pose sample.
#[derive(Debug, Clone)]
pub struct TrajectorySample {
    pub t: f64,
    pub pose: Pose,
}

/// A strictly time-ordered pose sequence: each sample is the pose of
/// `frame_body` expressed in `frame_world`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    frame_world: String,
    frame_body: String,
    samples: Vec<TrajectorySample>,
}

/// Timestamps closer than this are treated as the same instant when
/// matching a query against a stored sample.
const STAMP_EPS: f64 = 1e-9;

impl Trajectory {
    pub fn new(
        frame_world: impl Into<String>,
        frame_body: impl Into<String>,
        samples: Vec<(f64, Pose)>,
    ) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument(
                "trajectory needs at least one sample".into(),
            ));
        }
        for w in samples.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidArgument(format!(
                    "timestamps must be strictly increasing: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        Ok(Trajectory {
            frame_world: frame_world.into(),
            frame_body: frame_body.into(),
            samples: samples
                .into_iter()
                .map(|(t, pose)| TrajectorySample { t, pose })
                .collect(),
        })
    }

    pub fn frame_world(&self) -> &str {
        &self.frame_world
    }

    pub fn frame_body(&self) -> &str {
        &self.frame_body
    }

    pub fn samples(&self) -> &[TrajectorySample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor enforces >= 1 sample
    }

    pub fn start_time(&self) -> f64 {
        self.samples[0].t
    }

    pub fn end_time(&self) -> f64 {
        self.samples[self.samples.len() - 1].t
    }

    fn check_in_range(&self, what: &'static str, t: f64) -> Result<()> {
        if t < self.start_time() - STAMP_EPS || t > self.end_time() + STAMP_EPS {
            return Err(Error::OutOfRange {
                what,
                value: t,
                min: self.start_time(),
                max: self.end_time(),
            });
        }
        Ok(())
    }

    /// Pose at time `t`: the stored pose when `t` matches a sample to 1e-9 s,
    /// otherwise SE(3) interpolation between the bracketing samples.
    pub fn sample_at(&self, t: f64) -> Result<Pose> {
        self.check_in_range("query time", t)?;
        let idx = self.samples.partition_point(|s| s.t < t);
        // idx is the first sample with stamp >= t; exact hits may sit on
        // either side of the partition point.
        if idx < self.samples.len() && (self.samples[idx].t - t).abs() <= STAMP_EPS {
            return Ok(self.samples[idx].pose.clone());
        }
        if idx > 0 && (self.samples[idx - 1].t - t).abs() <= STAMP_EPS {
            return Ok(self.samples[idx - 1].pose.clone());
        }
        if self.samples.len() < 2 || idx == 0 || idx == self.samples.len() {
            return Err(Error::OutOfRange {
                what: "query time",
                value: t,
                min: self.start_time(),
                max: self.end_time(),
            });
        }
        let a = &self.samples[idx - 1];
        let b = &self.samples[idx];
        interpolate(&a.pose, &b.pose, a.t, b.t, t)
    }

    /// Traveled distance between `t0` and `t1`: the sum of translation
    /// chord lengths over stored samples, with interpolated endpoints.
    pub fn arc_length(&self, t0: f64, t1: f64) -> Result<f64> {
        if t0 > t1 {
            return Err(Error::InvalidArgument(format!(
                "arc_length needs t0 <= t1, got [{t0}, {t1}]"
            )));
        }
        self.check_in_range("arc-length start", t0)?;
        self.check_in_range("arc-length end", t1)?;
        let mut prev = *self.sample_at(t0)?.translation();
        let mut total = 0.0;
        for s in &self.samples {
            if s.t <= t0 {
                continue;
            }
            if s.t >= t1 {
                break;
            }
            let p = *s.pose.translation();
            total += (p - prev).norm();
            prev = p;
        }
        let last = *self.sample_at(t1)?.translation();
        total += (last - prev).norm();
        Ok(total)
    }

    /// Same poses with every timestamp increased by `delta`.
    pub fn shift_time(&self, delta: f64) -> Trajectory {
        Trajectory {
            frame_world: self.frame_world.clone(),
            frame_body: self.frame_body.clone(),
            samples: self
                .samples
                .iter()
                .map(|s| TrajectorySample {
                    t: s.t + delta,
                    pose: s.pose.clone(),
                })
                .collect(),
        }
    }
}

/// Greedy nearest-timestamp matching between two trajectories.
///
/// Candidate pairs within `max_dt` are taken in order of ascending |dt|
/// (ties broken by sample indices); each sample is used at most once and
/// the resulting pairs `(index_a, index_b)` are returned time-ordered.
pub fn associate(a: &Trajectory, b: &Trajectory, max_dt: f64) -> Vec<(usize, usize)> {
    let ta: Vec<f64> = a.samples().iter().map(|s| s.t).collect();
    let tb: Vec<f64> = b.samples().iter().map(|s| s.t).collect();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &t) in ta.iter().enumerate() {
        let lo = tb.partition_point(|&x| x < t - max_dt);
        for (j, &u) in tb.iter().enumerate().take(tb.len()).skip(lo) {
            if u > t + max_dt {
                break;
            }
            candidates.push(((t - u).abs(), i, j));
        }
    }
    candidates.sort_by(|x, y| {
        x.0.partial_cmp(&y.0)
            .unwrap()
            .then(x.1.cmp(&y.1))
            .then(x.2.cmp(&y.2))
    });
    let mut used_a = vec![false; ta.len()];
    let mut used_b = vec![false; tb.len()];
    let mut pairs = Vec::new();
    for (_, i, j) in candidates {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            pairs.push((i, j));
        }
    }
    pairs.sort_unstable();
    pairs
}

//! Seeded synthetic floorplan generator.
//!
//! Produces rectangular desk grids with optional aisles, mimicking the
//! regular cubicle layouts the other ingestion paths discover. Useful
//! for benchmarks and property tests where real floorplans are
//! unavailable.

use super::{Floorplan, IngestError, Source, Units, Workspace};
use crate::geometry::{BoundingBox, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Layout parameters for [`generate_synthetic`].
///
/// Desks sit on a `rows x cols` grid with centroid pitch `pitch_x` /
/// `pitch_y`. When `aisle_every > 0`, an extra `aisle_width` gap is
/// inserted after every `aisle_every` columns. `jitter` displaces each
/// desk uniformly in `[-jitter, jitter]` per axis so that different
/// seeds yield different layouts; zero keeps the grid exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub rows: u32,
    pub cols: u32,
    pub pitch_x: f64,
    pub pitch_y: f64,
    pub desk_w: f64,
    pub desk_h: f64,
    pub aisle_every: u32,
    pub aisle_width: f64,
    pub jitter: f64,
}

impl GridSpec {
    /// A plain grid of square desks at the given pitch, no aisles.
    pub fn plain(rows: u32, cols: u32, pitch: f64, desk: f64) -> Self {
        Self {
            rows,
            cols,
            pitch_x: pitch,
            pitch_y: pitch,
            desk_w: desk,
            desk_h: desk,
            aisle_every: 0,
            aisle_width: 0.0,
            jitter: 0.0,
        }
    }

    fn validate(&self) -> Result<(), IngestError> {
        if self.rows < 1 || self.cols < 1 {
            return Err(IngestError::InvalidSpec("rows and cols must be >= 1".into()));
        }
        if !(self.desk_w > 0.0 && self.desk_h > 0.0) {
            return Err(IngestError::InvalidSpec("desk sides must be positive".into()));
        }
        if self.pitch_x < self.desk_w || self.pitch_y < self.desk_h {
            return Err(IngestError::InvalidSpec(
                "pitch must be at least the desk side".into(),
            ));
        }
        if self.aisle_every > 0 && !(self.aisle_width >= 0.0 && self.aisle_width.is_finite()) {
            return Err(IngestError::InvalidSpec("bad aisle width".into()));
        }
        if !(self.jitter >= 0.0 && self.jitter.is_finite()) {
            return Err(IngestError::InvalidSpec("jitter must be non-negative".into()));
        }
        Ok(())
    }
}

/// Generates a deterministic desk grid; ids are `r{row}c{col}`.
pub fn generate_synthetic(spec: &GridSpec, seed: u64) -> Result<Floorplan, IngestError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut workspaces = Vec::with_capacity(spec.rows as usize * spec.cols as usize);
    for row in 0..spec.rows {
        for col in 0..spec.cols {
            let aisles = if spec.aisle_every > 0 {
                (col / spec.aisle_every) as f64
            } else {
                0.0
            };
            let mut x = col as f64 * spec.pitch_x + aisles * spec.aisle_width;
            let mut y = row as f64 * spec.pitch_y;
            if spec.jitter > 0.0 {
                x += rng.random_range(-spec.jitter..=spec.jitter);
                y += rng.random_range(-spec.jitter..=spec.jitter);
            }
            let bbox = BoundingBox::new(
                Point::new(x, y)?,
                Point::new(x + spec.desk_w, y + spec.desk_h)?,
            )?;
            workspaces.push(Workspace::new(format!("r{row}c{col}"), bbox, None));
        }
    }

    Floorplan::new(workspaces, Units::Inches, Source::Synthetic)
}

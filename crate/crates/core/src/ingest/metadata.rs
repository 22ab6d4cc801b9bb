//! Tabular workspace ingestion from a system-of-record export.
//!
//! Expected format: UTF-8 CSV with a header row and columns
//! `id,x,y,width,height,tag`. Coordinates are already in floorplan
//! units; `x,y` is the top-left corner of the workspace.

use super::{Floorplan, IngestError, Source, Units, Workspace};
use crate::geometry::{BoundingBox, Point};
use std::collections::BTreeSet;
use std::io::Read;

/// Loads workspace rows, keeping only those whose tag is in `keep_tags`.
///
/// Duplicate ids anywhere in the table are rejected; a malformed row is
/// reported with its 1-based data row index.
pub fn load_metadata<R: Read>(
    reader: R,
    keep_tags: &BTreeSet<String>,
) -> Result<Floorplan, IngestError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut seen = BTreeSet::new();
    let mut workspaces = Vec::new();
    for (i, record) in csv_reader.records().enumerate() {
        let index = i + 1;
        let row_err = |message: String| IngestError::Row { index, message };
        let record = record.map_err(|e| row_err(e.to_string()))?;
        if record.len() < 6 {
            return Err(row_err(format!("expected 6 columns, got {}", record.len())));
        }

        let id = record[0].to_string();
        if id.is_empty() {
            return Err(row_err("empty id".into()));
        }
        if !seen.insert(id.clone()) {
            return Err(IngestError::DuplicateId(id));
        }

        let num = |field: usize, name: &str| -> Result<f64, IngestError> {
            record[field]
                .parse::<f64>()
                .map_err(|_| row_err(format!("bad {name} value {:?}", &record[field])))
        };
        let x = num(1, "x")?;
        let y = num(2, "y")?;
        let width = num(3, "width")?;
        let height = num(4, "height")?;
        if width < 0.0 || height < 0.0 {
            return Err(row_err("negative width or height".into()));
        }
        let tag = record[5].to_string();

        if keep_tags.contains(&tag) {
            let bbox = BoundingBox::new(
                Point::new(x, y).map_err(|e| row_err(e.to_string()))?,
                Point::new(x + width, y + height).map_err(|e| row_err(e.to_string()))?,
            )?;
            workspaces.push(Workspace::new(id, bbox, Some(tag)));
        }
    }

    Floorplan::new(workspaces, Units::Inches, Source::Metadata)
}

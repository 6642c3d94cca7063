//! CSV sample dumps: `object_id,t,coord_0..coord_{n-1}`.

use std::path::{Path, PathBuf};

use anyhow::Context;
use dirfib_core::SampleGrid;

use crate::runner::TaskResult;

fn file_name(task: &str) -> String {
    let s: String = task.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect();
    format!("{s}.csv")
}

/// Writes `out` with one row per object and grid parameter.
pub fn write_samples<W: std::io::Write>(r: &TaskResult, grid: &SampleGrid, out: W) -> anyhow::Result<()> {
    let params = grid.points();
    let width = r.objects.iter().map(|(_, p)| p.eval(0.0).dim()).max().unwrap_or(0);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["object_id".to_string(), "t".to_string()];
    header.extend((0..width).map(|i| format!("coord_{i}")));
    w.write_record(&header)?;
    for (id, path) in &r.objects {
        for &t in &params {
            let p = path.eval(t);
            let mut row = vec![id.clone(), t.to_string()];
            row.extend((0..width).map(|i| p.coords().get(i).map(|x| x.to_string()).unwrap_or_default()));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// One file per task with objects; returns the files written.
pub fn dump_samples(results: &[TaskResult], dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut written = vec![];
    for r in results.iter().filter(|r| !r.objects.is_empty()) {
        let path = dir.join(file_name(&r.name));
        let f = std::fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
        let grid = SampleGrid::new(r.grid)?;
        write_samples(r, &grid, std::io::BufWriter::new(f)).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    Ok(written)
}

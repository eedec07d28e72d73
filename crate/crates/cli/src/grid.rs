use anyhow::{bail, Context, Result};

/// `start:stop:step`: start + i·step for every i with start + i·step below
/// stop + step/2, so stop itself is included when it lies on the lattice.
/// A comma-separated list of values is accepted as well.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse::<f64>()
            .with_context(|| format!("bad number {s:?} in grid {spec:?}"))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
                bail!("grid {spec:?} needs step > 0 and stop >= start");
            }
            let count = ((stop - start) / step + 0.5).floor() as usize + 1;
            (0..count).map(|i| start + i as f64 * step).collect()
        }
        [list] => list.split(',').map(num).collect::<Result<Vec<_>>>()?,
        _ => bail!("grid {spec:?} is neither start:stop:step nor a list"),
    };
    if grid.is_empty() {
        bail!("grid {spec:?} is empty");
    }
    Ok(grid)
}

//! CSV tables and PNG heatmaps.

use std::path::Path;

use image::{Rgb, RgbImage};

use crate::error::Result;

/// Floor applied before `log10` in heatmaps.
pub const LOG_FLOOR: f64 = 1e-16;

/// `x` with 17 significant digits.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn format_opt(x: Option<f64>) -> String {
    x.map(format_f64).unwrap_or_default()
}

/// Writes a header row followed by `rows`.
pub fn write_csv<I>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// A square `m x m` field, first coordinate fastest, drawn with the second
/// coordinate increasing upwards. Cells without a value are black.
pub fn write_log_heatmap(path: &Path, values: &[Option<f64>], m: usize) -> Result<()> {
    assert_eq!(values.len(), m * m);
    let logs: Vec<Option<f64>> = values
        .iter()
        .map(|v| v.map(|x| x.max(LOG_FLOOR).log10()))
        .collect();
    let finite = logs.iter().flatten();
    let lo = finite.clone().cloned().fold(f64::INFINITY, f64::min);
    let hi = finite.cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut img = RgbImage::new(m as u32, m as u32);
    for (idx, v) in logs.iter().enumerate() {
        let (i, j) = (idx % m, idx / m);
        let px = match v {
            Some(x) => colormap((x - lo) / span),
            None => Rgb([0, 0, 0]),
        };
        img.put_pixel(i as u32, (m - 1 - j) as u32, px);
    }
    img.save(path)?;
    Ok(())
}

// piecewise-linear blue -> cyan -> yellow -> red
fn colormap(t: f64) -> Rgb<u8> {
    const STOPS: [[f64; 3]; 4] = [
        [0.10, 0.10, 0.60],
        [0.00, 0.75, 0.85],
        [0.95, 0.90, 0.20],
        [0.80, 0.10, 0.10],
    ];
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let k = (t.floor() as usize).min(STOPS.len() - 2);
    let u = t - k as f64;
    let c = |i: usize| ((STOPS[k][i] * (1.0 - u) + STOPS[k + 1][i] * u) * 255.0).round() as u8;
    Rgb([c(0), c(1), c(2)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        let s = format_f64(0.1);
        assert_eq!(s, "1.0000000000000001e-1");
        assert_eq!(s.parse::<f64>().unwrap(), 0.1);
        let x = std::f64::consts::PI * 1e-300;
        assert_eq!(format_f64(x).parse::<f64>().unwrap(), x);
        assert_eq!(format_opt(None), "");
    }

    #[test]
    fn csv_and_png_files() {
        let dir = tempfile::tempdir().unwrap();
        let csv_path = dir.path().join("a.csv");
        write_csv(&csv_path, &["x", "y"], vec![vec!["1".into(), "".into()]]).unwrap();
        assert_eq!(std::fs::read_to_string(&csv_path).unwrap(), "x,y\n1,\n");
        let png = dir.path().join("a.png");
        write_log_heatmap(&png, &[Some(1.0), Some(0.0), None, Some(1e-3)], 2).unwrap();
        let img = image::open(&png).unwrap().to_rgb8();
        assert_eq!(img.dimensions(), (2, 2));
        assert_eq!(*img.get_pixel(0, 0), Rgb([0, 0, 0]));
        assert_eq!(*img.get_pixel(0, 1), colormap(1.0));
        assert_eq!(*img.get_pixel(1, 1), colormap(0.0));
    }
}

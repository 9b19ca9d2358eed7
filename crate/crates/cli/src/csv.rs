//! Deterministic CSV emission: one `#` metadata line, one header line, then
//! rows at 12 significant digits, written atomically via a temporary file.

use gapchannel_core::TimeSeries64;
use std::io::Write;
use std::path::Path;

/// Render a number with 12 significant digits, locale-free.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

/// Render the full CSV document for a series.
///
/// The first line is `# {json}` with every metadata entry (sorted by key),
/// the second line the column headers starting with `axis_label`, and each
/// following line one sample.
pub fn render(series: &TimeSeries64, axis_label: &str) -> String {
    let mut metadata = serde_json::Map::new();
    for (key, value) in &series.metadata {
        metadata.insert(key.clone(), serde_json::Value::String(value.clone()));
    }
    let mut out = String::new();
    out.push_str("# ");
    out.push_str(&serde_json::Value::Object(metadata).to_string());
    out.push('\n');

    let names = series.column_names();
    out.push_str(axis_label);
    for name in &names {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');

    let columns: Vec<&[f64]> = names
        .iter()
        .map(|n| series.column(n).expect("listed column exists"))
        .collect();
    for (i, &t) in series.times().iter().enumerate() {
        out.push_str(&format_number(t));
        for col in &columns {
            out.push(',');
            out.push_str(&format_number(col[i]));
        }
        out.push('\n');
    }
    out
}

/// Write the rendered document to `path` through a sibling temporary file
/// and an atomic rename.
pub fn write_series(
    path: &Path,
    series: &TimeSeries64,
    axis_label: &str,
) -> std::io::Result<()> {
    let document = render(series, axis_label);
    let tmp = path.with_extension("csv.tmp");
    {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(document.as_bytes())?;
        file.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gapchannel_core::timeseries::TimeSeries;

    fn sample_series() -> TimeSeries64 {
        let mut s = TimeSeries::new(&["a", "b"]);
        s.push(0.0, &[1.0, -0.25]).unwrap();
        s.push(1.5, &[0.3333333333333333, 1e-12]).unwrap();
        s.metadata.insert("kind".into(), "demo".into());
        s.metadata.insert("chi".into(), "10".into());
        s
    }

    #[test]
    fn layout_is_metadata_header_then_rows() {
        let text = render(&sample_series(), "t");
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[0].starts_with("# {"));
        let json: serde_json::Value = serde_json::from_str(&lines[0][2..]).unwrap();
        assert_eq!(json["kind"], "demo");
        assert_eq!(lines[1], "t,a,b");
        assert!(lines[2].starts_with("0.00000000000e0,1.00000000000e0"));
    }

    #[test]
    fn numbers_carry_twelve_significant_digits() {
        assert_eq!(format_number(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(format_number(-12345.678), "-1.23456780000e4");
    }

    #[test]
    fn rendering_is_deterministic() {
        let s = sample_series();
        assert_eq!(render(&s, "t"), render(&s, "t"));
    }

    #[test]
    fn writes_through_a_temporary_file() {
        let dir = std::env::temp_dir().join("gapchannel-csv-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("out.csv");
        write_series(&path, &sample_series(), "t").unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# {"));
        assert!(!path.with_extension("csv.tmp").exists());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}

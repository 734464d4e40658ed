//! CSV rendering and the plot-data side channel.
//!
//! Every command renders to a header plus string rows; floats are printed
//! with 9 significant digits so regression artifacts diff cleanly, and
//! unresolved degrees print as `NA`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Canonical float formatting for all emitted numbers: 9 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.8e}")
}

/// Canonical integer formatting, for degree columns.
pub fn fmt_int(k: i64) -> String {
    format!("{k}")
}

/// Renders a header and rows as CSV text.
pub fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes to the given path, or to stdout when no path is given.
pub fn write_output(out: Option<&Path>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content)?;
            Ok(())
        }
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
    }
}

/// Emits one `<stem>_<column>.xy` pair file per numeric column, using the
/// first column as the abscissa. Rows where either cell is not numeric
/// (e.g. an `NA` degree) are skipped in the pair files but stay in the CSV.
pub fn write_plot_data(
    csv_path: &Path,
    header: &[&str],
    rows: &[Vec<String>],
) -> anyhow::Result<Vec<PathBuf>> {
    let stem = csv_path.with_extension("");
    let mut written = Vec::new();
    for (col, name) in header.iter().enumerate().skip(1) {
        let mut body = String::new();
        for row in rows {
            let (Ok(x), Ok(y)) = (row[0].parse::<f64>(), row[col].parse::<f64>()) else {
                continue;
            };
            body.push_str(&format!("{x:.9e} {y:.9e}\n"));
        }
        let path = PathBuf::from(format!("{}_{}.xy", stem.display(), name));
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

//! Deterministic text output.

use std::fmt::Write as _;
use std::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits in scientific notation; `NaN`/`inf` verbatim.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// `# sscat <version> config=<hash>` followed by `extra` comment lines.
pub fn header(config_hash: &str, extra: &[String]) -> String {
    let mut s = format!("# sscat {VERSION} config={config_hash}\n");
    for line in extra {
        let _ = writeln!(s, "# {line}");
    }
    s
}

/// CSV body builder with a fixed column set.
pub struct Csv {
    text: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: String, columns: &[&str]) -> Self {
        let mut text = header;
        text.push_str(&columns.join(","));
        text.push('\n');
        Self {
            text,
            columns: columns.len(),
        }
    }

    pub fn row(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.columns, "row width");
        let cells: Vec<String> = values.iter().map(|&v| num(v)).collect();
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn comment(&mut self, line: &str) {
        let _ = writeln!(self.text, "# {line}");
    }

    pub fn finish(self) -> String {
        self.text
    }
}

pub fn write(dir: &Path, name: &str, contents: &str) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)
}

use serde_json::Value;

/// What a subcommand produced. `ok` is false when a check ran to completion
/// but failed; the process then exits with 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Self { json, text, ok: true }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Right-aligned columns separated by two spaces.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let padded: Vec<String> = cells.zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&mut headers.iter().copied());
    for row in rows {
        out += &line(&mut row.iter().map(String::as_str));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), pass, detail: detail.into() }
    }
}

pub fn selftest_report(module: &str, checks: Vec<Check>) -> Report {
    let ok = checks.iter().all(|c| c.pass);
    let mut text = String::new();
    for c in &checks {
        text += &format!("{}  {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    text += &format!("{module}: {}/{} checks passed\n", checks.iter().filter(|c| c.pass).count(), checks.len());
    let json = serde_json::json!({
        "module": module,
        "pass": ok,
        "checks": checks
            .iter()
            .map(|c| serde_json::json!({"name": c.name, "pass": c.pass, "detail": c.detail}))
            .collect::<Vec<_>>(),
    });
    Report { json, text, ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let t = table(&["d", "n"], &[vec!["1".into(), "2875".into()], vec!["10".into(), "5".into()]]);
        assert_eq!(t, " d     n\n 1  2875\n10     5\n");
    }
}

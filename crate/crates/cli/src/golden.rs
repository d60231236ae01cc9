//! Golden files: one rendered character table per corpus group.

use std::fs;
use std::path::Path;

use artinforge::chr::character_table;
use artinforge::corpus;

use crate::commands::Failure;

fn io(e: std::io::Error, what: &str) -> Failure {
    Failure { code: 1, message: format!("{what}: {e}") }
}

fn file_name(group: &str) -> String {
    let safe: String = group
        .chars()
        .map(|c| match c {
            '/' => '_',
            '(' | ')' | ',' => '-',
            '*' => 'c',
            c => c,
        })
        .collect();
    format!("{safe}.table.txt")
}

/// Every golden artifact as `(file name, contents)`.
pub fn artifacts() -> Result<Vec<(String, String)>, Failure> {
    corpus::NAMES
        .iter()
        .map(|&n| {
            let g = corpus::group(n)?;
            Ok((file_name(n), character_table(&g)?.render()))
        })
        .collect()
}

pub fn regenerate(dir: &Path) -> Result<Vec<String>, Failure> {
    fs::create_dir_all(dir).map_err(|e| io(e, "create corpus dir"))?;
    let mut out = Vec::new();
    for (name, body) in artifacts()? {
        fs::write(dir.join(&name), body).map_err(|e| io(e, &name))?;
        out.push(name);
    }
    Ok(out)
}

/// Names of files that are missing or differ byte-for-byte.
pub fn verify(dir: &Path) -> Result<Vec<String>, Failure> {
    let mut diffs = Vec::new();
    for (name, body) in artifacts()? {
        match fs::read(dir.join(&name)) {
            Ok(bytes) if bytes == body.as_bytes() => {}
            Ok(_) => diffs.push(format!("{name}: differs")),
            Err(_) => diffs.push(format!("{name}: missing")),
        }
    }
    Ok(diffs)
}

//! Writes every builtin scenario as JSON into the given directory
//! (default `scenarios`), one file per builtin.

use std::path::PathBuf;

use isodyn::cli::builtins;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "scenarios".into()));
    std::fs::create_dir_all(&dir)?;
    for s in builtins() {
        let path = dir.join(format!("{}.json", s.name));
        std::fs::write(&path, s.to_json() + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

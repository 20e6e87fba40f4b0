use std::fs::File;
use std::io::{self, BufReader, BufWriter};
use std::path::Path;

use lassalle_core::engine::MemoCache;
use lassalle_core::Error;

/// Reads the cache at `path`; a missing file is an empty cache.
pub fn load(path: &Path) -> Result<MemoCache, Error> {
    match File::open(path) {
        Ok(file) => MemoCache::load(BufReader::new(file)),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(MemoCache::new()),
        Err(e) => Err(e.into()),
    }
}

/// Writes through a temporary file in the same directory, then renames it
/// over `path`.
pub fn save(path: &Path, cache: &MemoCache) -> Result<(), Error> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    {
        let mut w = BufWriter::new(tmp.as_file_mut());
        io::Write::write_all(&mut w, b"# lassalle memo cache: gaps (descending) = value\n")?;
        cache.save(&mut w)?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

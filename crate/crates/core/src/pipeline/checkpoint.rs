//! One JSON shard per r-block, written atomically after the block finishes.

use std::fs;
use std::path::{Path, PathBuf};

use super::{BlockResult, SearchConfig};
use crate::error::{Error, Result};

pub(super) fn shard_path(dir: &Path, cfg: &SearchConfig, lo: i64, hi: i64) -> PathBuf {
    dir.join(format!(
        "{}-{}-{lo:010}-{hi:010}.json",
        cfg.request.family, cfg.threshold
    ))
}

pub(super) fn load(path: &Path, lo: i64, hi: i64) -> Result<Option<BlockResult>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::io(path, e)),
    };
    let block: BlockResult = serde_json::from_str(&text).map_err(|e| Error::BadShard {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    if (block.lo, block.hi) != (lo, hi) {
        return Err(Error::BadShard {
            path: path.to_path_buf(),
            msg: format!("covers [{}, {}], expected [{lo}, {hi}]", block.lo, block.hi),
        });
    }
    Ok(Some(block))
}

pub(super) fn store(path: &Path, block: &BlockResult) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec(block)?).map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

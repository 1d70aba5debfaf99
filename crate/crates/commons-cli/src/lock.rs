//! Advisory repository lock via flock(2) on `<repo>/.lock`.
//!
//! Read-only verbs take a shared lock; mutating verbs take an exclusive
//! lock. Concurrent invocations on the same repository queue on the lock.

use std::fs::{File, OpenOptions};
use std::io;
use std::os::unix::io::AsRawFd;
use std::path::Path;

pub enum LockMode {
    Shared,
    Exclusive,
}

/// Held for the lifetime of the command; flock releases on drop/close.
pub struct RepoLock {
    _file: File,
}

impl RepoLock {
    pub fn acquire(repo: &Path, mode: LockMode) -> io::Result<RepoLock> {
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .read(true)
            .write(true)
            .open(repo.join(".lock"))?;
        let op = match mode {
            LockMode::Shared => libc::LOCK_SH,
            LockMode::Exclusive => libc::LOCK_EX,
        };
        if unsafe { libc::flock(file.as_raw_fd(), op) } != 0 {
            return Err(io::Error::last_os_error());
        }
        Ok(RepoLock { _file: file })
    }
}

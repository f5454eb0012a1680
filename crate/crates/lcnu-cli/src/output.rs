use std::io::Write;
use std::path::PathBuf;

use crate::error::Result;

/// Where artifacts go: the output directory, or stdout for the primary one.
#[derive(Debug, Clone)]
pub struct Sink {
    pub dir: PathBuf,
    pub stdout: bool,
    written: Vec<PathBuf>,
}

impl Sink {
    pub fn new(dir: PathBuf, stdout: bool) -> Self {
        Self { dir, stdout, written: Vec::new() }
    }

    /// The machine-readable result of a command.
    pub fn primary(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        if self.stdout {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        } else {
            self.file(name, bytes)
        }
    }

    /// Supporting files; skipped when stdout carries the result.
    pub fn secondary(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        if self.stdout {
            return Ok(());
        }
        self.file(name, bytes)
    }

    fn file(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.dir.join(name);
        std::fs::write(&path, bytes)?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

pub fn progress(command: &str, msg: impl AsRef<str>) {
    eprintln!("[{command}] {}", msg.as_ref());
}

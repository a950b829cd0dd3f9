use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::{Error, Result};

/// Environment variable read by [`Workers::from_env`].
pub const WORKERS_ENV: &str = "BIPB_WORKERS";

/// A dedicated thread pool; parallel operator work runs inside
/// [`install`](Self::install).
pub struct Workers {
    pool: ThreadPool,
}

impl Workers {
    pub fn new(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        let pool = ThreadPoolBuilder::new()
            .num_threads(count)
            .thread_name(|i| format!("bipb-{i}"))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(Self { pool })
    }

    /// Count from `BIPB_WORKERS`, else the number of available cores.
    pub fn from_env() -> Result<Self> {
        match std::env::var(WORKERS_ENV) {
            Ok(v) => {
                let count = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("{WORKERS_ENV}={v:?} is not a worker count")))?;
                Self::new(count)
            }
            Err(_) => Self::new(std::thread::available_parallelism().map_or(1, |n| n.get())),
        }
    }

    pub fn count(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}

impl std::fmt::Debug for Workers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Workers").field("count", &self.count()).finish()
    }
}

//! Worker pools. `TEICH_THREADS` caps the worker count.

use rayon::{ThreadPool, ThreadPoolBuilder};

pub const THREADS_ENV: &str = "TEICH_THREADS";

/// Parse a `TEICH_THREADS` value; empty, zero or garbage means "no cap".
pub fn parse_thread_cap(value: Option<&str>) -> Option<usize> {
    value?.trim().parse::<usize>().ok().filter(|&n| n > 0)
}

pub fn thread_cap() -> Option<usize> {
    parse_thread_cap(std::env::var(THREADS_ENV).ok().as_deref())
}

/// A pool with `workers` threads, or the capped default when `None`.
pub fn pool(workers: Option<usize>) -> ThreadPool {
    let default = std::thread::available_parallelism().map_or(1, |n| n.get());
    let n = workers.or_else(thread_cap).unwrap_or(default).max(1);
    ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .expect("thread pool construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_parsing() {
        assert_eq!(parse_thread_cap(Some("4")), Some(4));
        assert_eq!(parse_thread_cap(Some(" 2 ")), Some(2));
        assert_eq!(parse_thread_cap(Some("0")), None);
        assert_eq!(parse_thread_cap(Some("many")), None);
        assert_eq!(parse_thread_cap(None), None);
    }

    #[test]
    fn explicit_worker_count() {
        assert_eq!(pool(Some(3)).current_num_threads(), 3);
    }
}

//! Persistent query cache with a rate-limit contract.
//!
//! Keys are the canonical query serialization; values are hit counts. The
//! on-disk form is an append-friendly `key<TAB>count` line file: inserts
//! append one line, and on load later lines win (a truncated trailing line
//! from a crash is ignored). All backend calls go through one lock, which
//! both deduplicates concurrent lookups of the same key and serializes live
//! queries so the backend's declared inter-query delay can be honored.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use super::{HitBackend, HitQuery, HitsError};

struct CacheState {
    entries: HashMap<String, u64>,
    file: Option<File>,
    last_backend_call: Option<Instant>,
}

/// Shared, thread-safe memo of query results, optionally persisted.
pub struct QueryCache {
    path: Option<PathBuf>,
    state: Mutex<CacheState>,
}

impl QueryCache {
    /// Purely in-memory cache.
    pub fn in_memory() -> QueryCache {
        QueryCache {
            path: None,
            state: Mutex::new(CacheState {
                entries: HashMap::new(),
                file: None,
                last_backend_call: None,
            }),
        }
    }

    /// Opens (creating if absent) a persistent cache file and loads its
    /// entries.
    pub fn open(path: &Path) -> Result<QueryCache, HitsError> {
        let mut file = OpenOptions::new()
            .read(true)
            .append(true)
            .create(true)
            .open(path)
            .map_err(HitsError::CacheIo)?;
        let mut content = String::new();
        file.read_to_string(&mut content)
            .map_err(HitsError::CacheIo)?;
        let mut entries = HashMap::new();
        for line in content.lines() {
            if let Some((key, count)) = line.rsplit_once('\t') {
                if let Ok(count) = count.parse::<u64>() {
                    entries.insert(key.to_string(), count);
                }
            }
        }
        Ok(QueryCache {
            path: Some(path.to_path_buf()),
            state: Mutex::new(CacheState {
                entries,
                file: Some(file),
                last_backend_call: None,
            }),
        })
    }

    pub fn len(&self) -> usize {
        self.state.lock().unwrap().entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Cached count for the query, if present.
    pub fn get(&self, query: &HitQuery) -> Option<u64> {
        self.state
            .lock()
            .unwrap()
            .entries
            .get(&query.canonical())
            .copied()
    }

    /// Drops all entries and truncates the backing file.
    pub fn clear(&self) -> Result<(), HitsError> {
        let mut state = self.state.lock().unwrap();
        state.entries.clear();
        if let Some(file) = &mut state.file {
            file.set_len(0).map_err(HitsError::CacheIo)?;
        }
        Ok(())
    }
}

/// Answers the query from the cache, falling back to the backend exactly
/// once per canonical key. Before each live call the backend's declared
/// minimum inter-query delay is honored (measured from the previous live
/// call through this cache). Backend failures propagate and leave the cache
/// untouched.
pub fn cached_hits(
    cache: &QueryCache,
    backend: &dyn HitBackend,
    query: &HitQuery,
) -> Result<u64, HitsError> {
    let key = query.canonical();
    // The lock is held across the backend call on purpose: concurrent
    // callers of one key collapse to a single live query, and live queries
    // are serialized so the delay contract is measurable.
    let mut state = cache.state.lock().unwrap();
    if let Some(&count) = state.entries.get(&key) {
        return Ok(count);
    }
    let delay = backend.min_query_delay();
    if !delay.is_zero() {
        if let Some(last) = state.last_backend_call {
            let elapsed = last.elapsed();
            if elapsed < delay {
                std::thread::sleep(delay - elapsed);
            }
        }
    }
    let count = backend.hits(query)?;
    state.last_backend_call = Some(Instant::now());
    state.entries.insert(key.clone(), count);
    if let Some(file) = &mut state.file {
        writeln!(file, "{key}\t{count}").map_err(HitsError::CacheIo)?;
        file.flush().map_err(HitsError::CacheIo)?;
    }
    Ok(count)
}

/// A backend wrapper that memoizes through a [`QueryCache`]. Declares zero
/// delay itself: the wrapped backend's delay is enforced inside
/// [`cached_hits`], and cache hits need none.
pub struct CachedBackend<'a> {
    cache: &'a QueryCache,
    inner: &'a dyn HitBackend,
}

impl<'a> CachedBackend<'a> {
    pub fn new(cache: &'a QueryCache, inner: &'a dyn HitBackend) -> CachedBackend<'a> {
        CachedBackend { cache, inner }
    }
}

impl HitBackend for CachedBackend<'_> {
    fn hits(&self, query: &HitQuery) -> Result<u64, HitsError> {
        cached_hits(self.cache, self.inner, query)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicU64, Ordering};
    use std::time::Duration;

    /// Test backend: fixed answer, counts calls, optional delay contract.
    struct Counting {
        answer: u64,
        calls: AtomicU64,
        delay: Duration,
        fail: bool,
    }

    impl Counting {
        fn new(answer: u64) -> Counting {
            Counting {
                answer,
                calls: AtomicU64::new(0),
                delay: Duration::ZERO,
                fail: false,
            }
        }
    }

    impl HitBackend for Counting {
        fn hits(&self, _query: &HitQuery) -> Result<u64, HitsError> {
            self.calls.fetch_add(1, Ordering::SeqCst);
            if self.fail {
                return Err(HitsError::BackendUnavailable("down".into()));
            }
            Ok(self.answer)
        }

        fn min_query_delay(&self) -> Duration {
            self.delay
        }
    }

    #[test]
    fn repeated_query_hits_backend_once() {
        let cache = QueryCache::in_memory();
        let backend = Counting::new(7);
        let q = HitQuery::term("excellent");
        for _ in 0..5 {
            assert_eq!(cached_hits(&cache, &backend, &q).unwrap(), 7);
        }
        assert_eq!(backend.calls.load(Ordering::SeqCst), 1);
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn distinct_queries_each_hit_backend() {
        let cache = QueryCache::in_memory();
        let backend = Counting::new(1);
        for w in ["a", "b", "c", "d"] {
            cached_hits(&cache, &backend, &HitQuery::term(w)).unwrap();
        }
        assert_eq!(backend.calls.load(Ordering::SeqCst), 4);
        assert_eq!(cache.len(), 4);
    }

    #[test]
    fn backend_failure_leaves_cache_untouched() {
        let cache = QueryCache::in_memory();
        let mut backend = Counting::new(1);
        backend.fail = true;
        let q = HitQuery::term("x");
        assert!(matches!(
            cached_hits(&cache, &backend, &q),
            Err(HitsError::BackendUnavailable(_))
        ));
        assert_eq!(cache.len(), 0);
        assert_eq!(cache.get(&q), None);
    }

    #[test]
    fn persists_across_reopen() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hits.cache");
        let q = HitQuery::near("good", "movie", "excellent", 10);
        {
            let cache = QueryCache::open(&path).unwrap();
            let backend = Counting::new(42);
            assert_eq!(cached_hits(&cache, &backend, &q).unwrap(), 42);
        }
        let cache = QueryCache::open(&path).unwrap();
        assert_eq!(cache.len(), 1);
        let backend = Counting::new(0);
        assert_eq!(cached_hits(&cache, &backend, &q).unwrap(), 42);
        assert_eq!(backend.calls.load(Ordering::SeqCst), 0);
    }

    #[test]
    fn tolerates_truncated_trailing_line() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hits.cache");
        std::fs::write(&path, "term|a|\t3\nterm|b|\t5\nterm|half").unwrap();
        let cache = QueryCache::open(&path).unwrap();
        assert_eq!(cache.len(), 2);
        assert_eq!(cache.get(&HitQuery::term("a")), Some(3));
    }

    #[test]
    fn clear_empties_file_and_map() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("hits.cache");
        let cache = QueryCache::open(&path).unwrap();
        cached_hits(&cache, &Counting::new(1), &HitQuery::term("a")).unwrap();
        assert_eq!(cache.len(), 1);
        cache.clear().unwrap();
        assert_eq!(cache.len(), 0);
        assert_eq!(std::fs::metadata(&path).unwrap().len(), 0);
    }

    #[test]
    fn honors_backend_delay_between_live_calls() {
        let cache = QueryCache::in_memory();
        let mut backend = Counting::new(1);
        backend.delay = Duration::from_millis(40);
        let start = Instant::now();
        cached_hits(&cache, &backend, &HitQuery::term("a")).unwrap();
        cached_hits(&cache, &backend, &HitQuery::term("b")).unwrap();
        cached_hits(&cache, &backend, &HitQuery::term("c")).unwrap();
        // two inter-call gaps of >= 40ms
        assert!(start.elapsed() >= Duration::from_millis(80));
        // cached repeats pay nothing
        let start = Instant::now();
        cached_hits(&cache, &backend, &HitQuery::term("a")).unwrap();
        assert!(start.elapsed() < Duration::from_millis(40));
    }

    #[test]
    fn concurrent_same_key_single_backend_call() {
        use std::sync::Arc;

        struct Slow(AtomicU64);
        impl HitBackend for Slow {
            fn hits(&self, _q: &HitQuery) -> Result<u64, HitsError> {
                self.0.fetch_add(1, Ordering::SeqCst);
                std::thread::sleep(Duration::from_millis(30));
                Ok(9)
            }
        }

        let cache = Arc::new(QueryCache::in_memory());
        let backend = Arc::new(Slow(AtomicU64::new(0)));
        let mut handles = Vec::new();
        for _ in 0..8 {
            let cache = Arc::clone(&cache);
            let backend = Arc::clone(&backend);
            handles.push(std::thread::spawn(move || {
                cached_hits(&cache, backend.as_ref(), &HitQuery::term("same")).unwrap()
            }));
        }
        for h in handles {
            assert_eq!(h.join().unwrap(), 9);
        }
        assert_eq!(backend.0.load(Ordering::SeqCst), 1);
    }

    #[test]
    fn cached_backend_wrapper() {
        let cache = QueryCache::in_memory();
        let backend = Counting::new(3);
        let cached = CachedBackend::new(&cache, &backend);
        let q = HitQuery::term("x");
        assert_eq!(cached.hits(&q).unwrap(), 3);
        assert_eq!(cached.hits(&q).unwrap(), 3);
        assert_eq!(backend.calls.load(Ordering::SeqCst), 1);
        assert!(cached.min_query_delay().is_zero());
    }
}

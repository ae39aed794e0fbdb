use std::collections::HashMap;
use std::env;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use crate::error::{LmfdbError, Result};
use crate::record::{parse_page, LmfdbRecord};
use crate::store::{now_secs, ManifestEntry, Store, ENDPOINT, FORMAT_VERSION};

pub const DEFAULT_BASE_URL: &str = "https://www.lmfdb.org";

#[derive(Clone, Debug)]
pub struct LmfdbConfig {
    pub base_url: String,
    pub cache_dir: PathBuf,
    /// Read-only store consulted in offline mode.
    pub fixtures_dir: Option<PathBuf>,
    pub offline: bool,
    /// Minimum spacing between requests.
    pub min_interval: Duration,
    pub max_retries: u32,
    /// First retry delay; doubled on each further retry.
    pub backoff_base: Duration,
    /// Cached entries older than this are refetched.
    pub ttl: Duration,
    pub timeout: Duration,
    pub max_pages: usize,
}

pub fn bundled_fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn default_cache_dir() -> PathBuf {
    if let Some(x) = env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(x).join("brauer-lmfdb");
    }
    if let Some(h) = env::var_os("HOME") {
        return PathBuf::from(h).join(".cache").join("brauer-lmfdb");
    }
    PathBuf::from(".brauer-lmfdb-cache")
}

impl Default for LmfdbConfig {
    fn default() -> Self {
        LmfdbConfig {
            base_url: DEFAULT_BASE_URL.into(),
            cache_dir: default_cache_dir(),
            fixtures_dir: Some(bundled_fixtures_dir()),
            offline: false,
            min_interval: Duration::from_secs(1),
            max_retries: 5,
            backoff_base: Duration::from_secs(1),
            ttl: Duration::from_secs(30 * 24 * 3600),
            timeout: Duration::from_secs(60),
            max_pages: 10_000,
        }
    }
}

impl LmfdbConfig {
    /// Defaults overridden by `BRAUER_LMFDB_BASE_URL`, `BRAUER_LMFDB_CACHE`,
    /// `BRAUER_LMFDB_FIXTURES` and `BRAUER_LMFDB_OFFLINE`.
    pub fn from_env() -> Self {
        let mut c = LmfdbConfig::default();
        if let Ok(u) = env::var("BRAUER_LMFDB_BASE_URL") {
            c.base_url = u;
        }
        if let Some(d) = env::var_os("BRAUER_LMFDB_CACHE") {
            c.cache_dir = d.into();
        }
        if let Some(d) = env::var_os("BRAUER_LMFDB_FIXTURES") {
            c.fixtures_dir = Some(d.into());
        }
        if let Ok(v) = env::var("BRAUER_LMFDB_OFFLINE") {
            c.offline = matches!(v.to_ascii_lowercase().as_str(), "1" | "true" | "yes" | "on");
        }
        c
    }

    pub fn offline_with_fixtures() -> Self {
        LmfdbConfig { offline: true, ..LmfdbConfig::from_env() }
    }
}

/// Genus-2 isogeny classes over `F_q`, optionally restricted to one p-rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Query {
    pub q: u64,
    pub p_rank: Option<u32>,
}

impl Query {
    pub fn all(q: u64) -> Self {
        Query { q, p_rank: None }
    }

    pub fn p_rank(q: u64, r: u32) -> Self {
        Query { q, p_rank: Some(r) }
    }

    /// Path and query string of the first page; filters use the typed `i`
    /// prefix the API expects for integers.
    pub fn path(&self) -> String {
        let mut s = format!("/api/{ENDPOINT}/?g=i2&q=i{}", self.q);
        if let Some(r) = self.p_rank {
            s.push_str(&format!("&p_rank=i{r}"));
        }
        s.push_str("&_format=json");
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Fixture,
    Cache,
    Network,
    /// Past its TTL, used because the refetch failed.
    StaleCache,
}

#[derive(Clone, Debug)]
pub struct Fetched {
    pub records: Vec<LmfdbRecord>,
    pub source: Source,
    pub pages: usize,
}

#[derive(Debug)]
pub struct LmfdbClient {
    config: LmfdbConfig,
    cache: Store,
    fixtures: Option<Store>,
    agent: ureq::Agent,
    last_request: Mutex<Option<Instant>>,
    inflight: Mutex<HashMap<Query, Arc<Mutex<()>>>>,
}

impl LmfdbClient {
    pub fn new(config: LmfdbConfig) -> Self {
        let agent = ureq::AgentBuilder::new().timeout(config.timeout).build();
        LmfdbClient {
            cache: Store::new(config.cache_dir.clone()),
            fixtures: config.fixtures_dir.clone().map(Store::new),
            agent,
            last_request: Mutex::new(None),
            inflight: Mutex::new(HashMap::new()),
            config,
        }
    }

    pub fn from_env() -> Self {
        LmfdbClient::new(LmfdbConfig::from_env())
    }

    pub fn config(&self) -> &LmfdbConfig {
        &self.config
    }

    pub fn fetch_isogeny_classes(&self, q: u64) -> Result<Fetched> {
        self.fetch(Query::all(q))
    }

    /// Offline: fixtures only. Online: a fresh cache entry, else the
    /// network, else a stale cache entry. Concurrent calls for the same
    /// query share one fetch.
    pub fn fetch(&self, query: Query) -> Result<Fetched> {
        let missing = || LmfdbError::OfflineDataMissing { q: query.q, p_rank: query.p_rank };
        if self.config.offline {
            let store = self.fixtures.as_ref().ok_or_else(missing)?;
            let entry = store.lookup(query.q, query.p_rank)?.ok_or_else(missing)?;
            return load(store, &entry, Source::Fixture);
        }

        let slot = {
            let mut map = self.inflight.lock().unwrap_or_else(|e| e.into_inner());
            map.entry(query).or_default().clone()
        };
        let _flight = slot.lock().unwrap_or_else(|e| e.into_inner());

        let cached = self.cache.lookup(query.q, query.p_rank)?;
        if let Some(entry) = &cached {
            let age = now_secs().saturating_sub(entry.fetched_at);
            if Duration::from_secs(age) < self.config.ttl {
                return load(&self.cache, entry, Source::Cache);
            }
        }
        match self.download(query) {
            Ok(f) => Ok(f),
            Err(LmfdbError::Network(_) | LmfdbError::Http { .. }) if cached.is_some() => {
                load(&self.cache, cached.as_ref().unwrap(), Source::StaleCache)
            }
            Err(LmfdbError::Network(_) | LmfdbError::Http { .. }) => Err(missing()),
            Err(e) => Err(e),
        }
    }

    fn download(&self, query: Query) -> Result<Fetched> {
        let mut url = format!("{}{}", self.config.base_url.trim_end_matches('/'), query.path());
        let mut digests = Vec::new();
        let mut records = Vec::new();
        loop {
            if digests.len() >= self.config.max_pages {
                return Err(LmfdbError::Network(format!("more than {} pages", self.config.max_pages)));
            }
            let body = self.get(&url)?;
            let page = match parse_page(&body) {
                Ok(p) => p,
                Err(message) => {
                    let document = self.keep_rejected(&body)?;
                    return Err(LmfdbError::Parse { message: format!("{url}: {message}"), document });
                }
            };
            for r in &page.records {
                if r.q != query.q || query.p_rank.is_some_and(|p| p != r.p_rank) {
                    let document = self.keep_rejected(&body)?;
                    return Err(LmfdbError::Parse {
                        message: format!("{url}: record {} does not match the query", r.label),
                        document,
                    });
                }
            }
            digests.push(self.cache.put_object(&body)?);
            let empty = page.records.is_empty();
            records.extend(page.records);
            match page.next {
                Some(next) if !empty => url = self.absolute(&next),
                _ => break,
            }
        }
        self.cache.record(ManifestEntry {
            endpoint: ENDPOINT.into(),
            format_version: FORMAT_VERSION,
            q: query.q,
            p_rank: query.p_rank,
            count: records.len(),
            pages: digests.clone(),
            fetched_at: now_secs(),
        })?;
        Ok(Fetched { records, source: Source::Network, pages: digests.len() })
    }

    fn absolute(&self, next: &str) -> String {
        if next.starts_with("http://") || next.starts_with("https://") {
            next.to_string()
        } else {
            let sep = if next.starts_with('/') { "" } else { "/" };
            format!("{}{sep}{next}", self.config.base_url.trim_end_matches('/'))
        }
    }

    fn keep_rejected(&self, body: &[u8]) -> Result<PathBuf> {
        let store = Store::new(self.cache.root().join("rejected"));
        let d = store.put_object(body)?;
        Ok(store.object_path(&d))
    }

    fn throttle(&self) {
        let mut last = self.last_request.lock().unwrap_or_else(|e| e.into_inner());
        if let Some(t) = *last {
            let wait = self.config.min_interval.saturating_sub(t.elapsed());
            if !wait.is_zero() {
                thread::sleep(wait);
            }
        }
        *last = Some(Instant::now());
    }

    fn get(&self, url: &str) -> Result<Vec<u8>> {
        let mut attempt = 0;
        loop {
            self.throttle();
            let err = match self.agent.get(url).call() {
                Ok(resp) => {
                    let mut buf = Vec::new();
                    std::io::Read::read_to_end(&mut resp.into_reader(), &mut buf)
                        .map_err(|e| LmfdbError::Network(format!("{url}: {e}")))?;
                    return Ok(buf);
                }
                Err(ureq::Error::Status(status, resp)) if status == 429 || status >= 500 => {
                    let retry_after = resp
                        .header("Retry-After")
                        .and_then(|v| v.trim().parse::<u64>().ok())
                        .map(Duration::from_secs);
                    (LmfdbError::Http { status, url: url.into() }, retry_after)
                }
                Err(ureq::Error::Status(status, _)) => {
                    return Err(LmfdbError::Http { status, url: url.into() });
                }
                Err(ureq::Error::Transport(t)) => (LmfdbError::Network(format!("{url}: {t}")), None),
            };
            if attempt >= self.config.max_retries {
                return Err(err.0);
            }
            let backoff = self.config.backoff_base.saturating_mul(1 << attempt.min(16));
            thread::sleep(err.1.map_or(backoff, |r| r.max(backoff)).min(Duration::from_secs(120)));
            attempt += 1;
        }
    }
}

fn load(store: &Store, entry: &ManifestEntry, source: Source) -> Result<Fetched> {
    let mut records = Vec::new();
    for d in &entry.pages {
        let body = store.get_object(d)?;
        let page = parse_page(&body)
            .map_err(|message| LmfdbError::Parse { message, document: store.object_path(d) })?;
        records.extend(page.records);
    }
    if records.len() != entry.count {
        return Err(LmfdbError::Parse {
            message: format!("manifest lists {} records, pages hold {}", entry.count, records.len()),
            document: store.root().join("manifest.json"),
        });
    }
    Ok(Fetched { records, source, pages: entry.pages.len() })
}

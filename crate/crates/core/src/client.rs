//! Generic chat-completion HTTP client.
//!
//! Vendor-neutral: base URL, model name, API-key header, temperature, and
//! retry/rate limits are all configuration. Requests are retried with
//! exponential backoff on rate-limit and transient failures, and a shared
//! token bucket plus an in-flight cap throttle concurrent workers.

use std::sync::{Condvar, Mutex};
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use thiserror::Error;

/// Environment variable names understood by [`LlmConfig::from_env`].
pub mod env_keys {
    pub const BASE_URL: &str = "GRIDBENCH_LLM_BASE_URL";
    pub const MODEL: &str = "GRIDBENCH_LLM_MODEL";
    pub const API_KEY: &str = "GRIDBENCH_LLM_API_KEY";
    pub const API_KEY_HEADER: &str = "GRIDBENCH_LLM_API_KEY_HEADER";
    pub const SYSTEM_MESSAGE: &str = "GRIDBENCH_LLM_SYSTEM_MESSAGE";
    pub const TEMPERATURE: &str = "GRIDBENCH_LLM_TEMPERATURE";
    pub const MAX_RETRIES: &str = "GRIDBENCH_LLM_MAX_RETRIES";
    pub const TIMEOUT_MS: &str = "GRIDBENCH_LLM_TIMEOUT_MS";
    pub const MAX_IN_FLIGHT: &str = "GRIDBENCH_LLM_MAX_IN_FLIGHT";
    pub const REQUESTS_PER_SECOND: &str = "GRIDBENCH_LLM_RPS";
}

/// Remote endpoint configuration.
#[derive(Clone, Debug)]
pub struct LlmConfig {
    /// Full chat-completions URL, e.g. `http://host:port/v1/chat/completions`.
    pub base_url: String,
    pub model: String,
    pub api_key: Option<String>,
    /// Header carrying the key. `Authorization` sends `Bearer <key>`;
    /// any other header sends the key verbatim.
    pub api_key_header: String,
    /// Optional system message; by default the whole prompt travels in a
    /// single user message.
    pub system_message: Option<String>,
    pub temperature: f64,
    /// Retries after the initial attempt.
    pub max_retries: u32,
    pub initial_backoff: Duration,
    pub max_backoff: Duration,
    pub timeout: Duration,
    pub max_in_flight: usize,
    pub requests_per_second: f64,
}

impl LlmConfig {
    pub fn new(base_url: impl Into<String>, model: impl Into<String>) -> Self {
        LlmConfig {
            base_url: base_url.into(),
            model: model.into(),
            api_key: None,
            api_key_header: "Authorization".into(),
            system_message: None,
            temperature: 0.0,
            max_retries: 3,
            initial_backoff: Duration::from_millis(250),
            max_backoff: Duration::from_secs(8),
            timeout: Duration::from_secs(60),
            max_in_flight: 4,
            requests_per_second: 2.0,
        }
    }

    /// Read the endpoint configuration from `GRIDBENCH_LLM_*` variables.
    pub fn from_env() -> Result<Self, ClientError> {
        let get = |key: &'static str| std::env::var(key).ok();
        let base_url = get(env_keys::BASE_URL)
            .ok_or(ClientError::MissingConfig(env_keys::BASE_URL))?;
        let model = get(env_keys::MODEL).ok_or(ClientError::MissingConfig(env_keys::MODEL))?;
        let mut config = LlmConfig::new(base_url, model);
        config.api_key = get(env_keys::API_KEY);
        if let Some(header) = get(env_keys::API_KEY_HEADER) {
            config.api_key_header = header;
        }
        config.system_message = get(env_keys::SYSTEM_MESSAGE);
        if let Some(t) = get(env_keys::TEMPERATURE) {
            config.temperature = t
                .parse()
                .map_err(|_| ClientError::MissingConfig(env_keys::TEMPERATURE))?;
        }
        if let Some(r) = get(env_keys::MAX_RETRIES) {
            config.max_retries = r
                .parse()
                .map_err(|_| ClientError::MissingConfig(env_keys::MAX_RETRIES))?;
        }
        if let Some(t) = get(env_keys::TIMEOUT_MS) {
            let ms: u64 = t
                .parse()
                .map_err(|_| ClientError::MissingConfig(env_keys::TIMEOUT_MS))?;
            config.timeout = Duration::from_millis(ms);
        }
        if let Some(m) = get(env_keys::MAX_IN_FLIGHT) {
            config.max_in_flight = m
                .parse()
                .map_err(|_| ClientError::MissingConfig(env_keys::MAX_IN_FLIGHT))?;
        }
        if let Some(r) = get(env_keys::REQUESTS_PER_SECOND) {
            config.requests_per_second = r
                .parse()
                .map_err(|_| ClientError::MissingConfig(env_keys::REQUESTS_PER_SECOND))?;
        }
        Ok(config)
    }
}

/// Client failure modes.
#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport failure after {attempts} attempt(s): {message}")]
    Transport { attempts: u32, message: String },
    #[error("authentication rejected (HTTP {status})")]
    Auth { status: u16 },
    #[error("malformed response body: {0}")]
    MalformedResponse(String),
    #[error("missing or invalid configuration: {0}")]
    MissingConfig(&'static str),
}

/// Token bucket; refills continuously at `refill_per_sec`.
#[derive(Debug)]
pub struct TokenBucket {
    capacity: f64,
    tokens: f64,
    refill_per_sec: f64,
    last_refill: Instant,
}

impl TokenBucket {
    pub fn new(capacity: f64, refill_per_sec: f64, now: Instant) -> Self {
        TokenBucket {
            capacity,
            tokens: capacity,
            refill_per_sec,
            last_refill: now,
        }
    }

    /// Take one token, returning how long the caller must wait first.
    pub fn next_wait(&mut self, now: Instant) -> Duration {
        let elapsed = now.saturating_duration_since(self.last_refill).as_secs_f64();
        self.tokens = (self.tokens + elapsed * self.refill_per_sec).min(self.capacity);
        self.last_refill = now;
        if self.tokens >= 1.0 {
            self.tokens -= 1.0;
            Duration::ZERO
        } else {
            let missing = 1.0 - self.tokens;
            self.tokens -= 1.0;
            Duration::from_secs_f64(missing / self.refill_per_sec)
        }
    }
}

/// Counting semaphore for the in-flight request cap.
struct Semaphore {
    slots: Mutex<usize>,
    cv: Condvar,
}

impl Semaphore {
    fn new(count: usize) -> Self {
        Semaphore {
            slots: Mutex::new(count.max(1)),
            cv: Condvar::new(),
        }
    }

    fn acquire(&self) {
        let mut slots = self.slots.lock().unwrap();
        while *slots == 0 {
            slots = self.cv.wait(slots).unwrap();
        }
        *slots -= 1;
    }

    fn release(&self) {
        *self.slots.lock().unwrap() += 1;
        self.cv.notify_one();
    }
}

/// Blocking chat-completion client; share one instance across workers so
/// the rate limit and in-flight cap apply globally.
pub struct LlmClient {
    config: LlmConfig,
    http: reqwest::blocking::Client,
    bucket: Mutex<TokenBucket>,
    in_flight: Semaphore,
}

impl LlmClient {
    pub fn new(config: LlmConfig) -> Result<Self, ClientError> {
        let http = reqwest::blocking::Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|e| ClientError::Transport {
                attempts: 0,
                message: e.to_string(),
            })?;
        let burst = config.requests_per_second.max(1.0);
        Ok(LlmClient {
            bucket: Mutex::new(TokenBucket::new(
                burst,
                config.requests_per_second.max(0.001),
                Instant::now(),
            )),
            in_flight: Semaphore::new(config.max_in_flight),
            http,
            config,
        })
    }

    pub fn config(&self) -> &LlmConfig {
        &self.config
    }

    fn request_body(&self, prompt: &str) -> Value {
        let mut messages = Vec::new();
        if let Some(system) = &self.config.system_message {
            messages.push(json!({"role": "system", "content": system}));
        }
        messages.push(json!({"role": "user", "content": prompt}));
        json!({
            "model": self.config.model,
            "temperature": self.config.temperature,
            "messages": messages,
        })
    }

    fn throttle(&self) {
        self.in_flight.acquire();
        let wait = self.bucket.lock().unwrap().next_wait(Instant::now());
        if !wait.is_zero() {
            std::thread::sleep(wait);
        }
    }

    /// Send `prompt` and return the completion text.
    pub fn complete(&self, prompt: &str) -> Result<String, ClientError> {
        let body = self.request_body(prompt);
        let mut attempts = 0u32;
        let mut backoff = self.config.initial_backoff;
        loop {
            attempts += 1;
            self.throttle();
            let result = self.send_once(&body);
            self.in_flight.release();
            match result {
                Ok(text) => return Ok(text),
                Err(SendError::Fatal(err)) => return Err(err),
                Err(SendError::Transient(message)) => {
                    if attempts > self.config.max_retries {
                        return Err(ClientError::Transport { attempts, message });
                    }
                    std::thread::sleep(backoff);
                    backoff = (backoff * 2).min(self.config.max_backoff);
                }
            }
        }
    }

    fn send_once(&self, body: &Value) -> Result<String, SendError> {
        let mut request = self.http.post(&self.config.base_url).json(body);
        if let Some(key) = &self.config.api_key {
            let value = if self.config.api_key_header.eq_ignore_ascii_case("authorization") {
                format!("Bearer {key}")
            } else {
                key.clone()
            };
            request = request.header(&self.config.api_key_header, value);
        }
        let response = request
            .send()
            .map_err(|e| SendError::Transient(e.to_string()))?;
        let status = response.status();
        if status.as_u16() == 401 || status.as_u16() == 403 {
            return Err(SendError::Fatal(ClientError::Auth {
                status: status.as_u16(),
            }));
        }
        if status.as_u16() == 429 || status.is_server_error() {
            return Err(SendError::Transient(format!("HTTP {status}")));
        }
        if !status.is_success() {
            return Err(SendError::Fatal(ClientError::Transport {
                attempts: 1,
                message: format!("HTTP {status}"),
            }));
        }
        let value: Value = response
            .json()
            .map_err(|e| SendError::Fatal(ClientError::MalformedResponse(e.to_string())))?;
        value["choices"][0]["message"]["content"]
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| {
                SendError::Fatal(ClientError::MalformedResponse(
                    "missing choices[0].message.content".into(),
                ))
            })
    }
}

enum SendError {
    Transient(String),
    Fatal(ClientError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_bucket_meters_requests() {
        let start = Instant::now();
        let mut bucket = TokenBucket::new(2.0, 1.0, start);
        assert_eq!(bucket.next_wait(start), Duration::ZERO);
        assert_eq!(bucket.next_wait(start), Duration::ZERO);
        // bucket empty: third request waits a full second
        let wait = bucket.next_wait(start);
        assert!((wait.as_secs_f64() - 1.0).abs() < 1e-9);
        // refill eventually clears the debt
        let later = start + Duration::from_millis(3500);
        assert_eq!(bucket.next_wait(later), Duration::ZERO);
    }

    #[test]
    fn request_body_shape() {
        let mut config = LlmConfig::new("http://localhost/v1/chat/completions", "test-model");
        config.system_message = Some("be brief".into());
        let client = LlmClient::new(config).unwrap();
        let body = client.request_body("hello");
        assert_eq!(body["model"], "test-model");
        assert_eq!(body["temperature"], 0.0);
        assert_eq!(body["messages"][0]["role"], "system");
        assert_eq!(body["messages"][1]["role"], "user");
        assert_eq!(body["messages"][1]["content"], "hello");
    }

    #[test]
    fn single_user_message_by_default() {
        let config = LlmConfig::new("http://localhost/x", "m");
        let client = LlmClient::new(config).unwrap();
        let body = client.request_body("prompt");
        assert_eq!(body["messages"].as_array().unwrap().len(), 1);
        assert_eq!(body["messages"][0]["role"], "user");
    }
}

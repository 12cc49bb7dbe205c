use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::report::SCHEMA_VERSION;
use crate::CliError;

/// Overrides the directory golden fixtures are read from.
pub const FIXTURES_ENV: &str = "FPP_FIXTURES_DIR";

pub fn default_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

pub fn fixtures_dir() -> PathBuf {
    std::env::var_os(FIXTURES_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(default_dir)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PicardFixture {
    pub schema_version: u32,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
    pub determinant: i64,
    pub signature: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stage1Fixture {
    pub schema_version: u32,
    pub m: i64,
    pub tuples: Vec<[i64; 4]>,
}

/// `(type, count)` pairs; types written `1/m(1,a)`.
pub type ProfileEntry = Vec<(String, u32)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientFixture {
    pub kz_squared: String,
    pub singularities: ProfileEntry,
    pub resolved_k2: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfilesFixture {
    pub schema_version: u32,
    pub lefschetz_p7: Vec<String>,
    pub profiles: BTreeMap<String, Vec<ProfileEntry>>,
    pub excluded_type: String,
    pub after_exclusion: Vec<ProfileEntry>,
    pub quotients: BTreeMap<String, QuotientFixture>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigurationFixture {
    pub name: String,
    pub fibres: Vec<(String, u32)>,
    pub euler: u32,
    pub picard: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FibresFixture {
    pub schema_version: u32,
    pub solutions: BTreeMap<String, Vec<Vec<u32>>>,
    pub admissible: Vec<Vec<u32>>,
    pub configurations: Vec<ConfigurationFixture>,
}

pub const PICARD_FILE: &str = "picard_matrix.json";
pub const STAGE1_FILE: &str = "stage1_m1.json";
pub const PROFILES_FILE: &str = "profiles.json";
pub const FIBRES_FILE: &str = "fibres.json";

trait Versioned {
    fn version(&self) -> u32;
}

macro_rules! versioned {
    ($($t:ty),*) => {
        $(impl Versioned for $t {
            fn version(&self) -> u32 {
                self.schema_version
            }
        })*
    };
}

versioned!(PicardFixture, Stage1Fixture, ProfilesFixture, FibresFixture);

fn load<T: DeserializeOwned + Versioned>(dir: &Path, file: &str) -> Result<T, CliError> {
    let path = dir.join(file);
    let text = fs::read_to_string(&path).map_err(|e| CliError::Fixture {
        path: path.clone(),
        reason: e.to_string(),
    })?;
    let value: T = serde_json::from_str(&text).map_err(|e| CliError::Fixture {
        path: path.clone(),
        reason: e.to_string(),
    })?;
    if value.version() != SCHEMA_VERSION {
        return Err(CliError::Fixture {
            path,
            reason: format!(
                "schema_version {} (expected {})",
                value.version(),
                SCHEMA_VERSION
            ),
        });
    }
    Ok(value)
}

pub fn picard(dir: &Path) -> Result<PicardFixture, CliError> {
    load(dir, PICARD_FILE)
}

pub fn stage1(dir: &Path) -> Result<Stage1Fixture, CliError> {
    load(dir, STAGE1_FILE)
}

pub fn profiles(dir: &Path) -> Result<ProfilesFixture, CliError> {
    load(dir, PROFILES_FILE)
}

pub fn fibres(dir: &Path) -> Result<FibresFixture, CliError> {
    load(dir, FIBRES_FILE)
}

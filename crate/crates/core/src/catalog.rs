//! Static hardware-metric catalog.
//!
//! Power and delay are never simulated; they come from this table. The
//! table is embedded at build time and may be replaced at run time by a CSV
//! file named in `AXMUL_CATALOG`.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable naming a catalog CSV that replaces the embedded one.
pub const CATALOG_ENV: &str = "AXMUL_CATALOG";

const EMBEDDED: &str = include_str!("../data/catalog.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryClass {
    Cell,
    Compressor,
    Array8,
    Tree8,
    Array16,
    Tree16,
}

impl EntryClass {
    pub const ALL: [EntryClass; 6] = [
        EntryClass::Cell,
        EntryClass::Compressor,
        EntryClass::Array8,
        EntryClass::Tree8,
        EntryClass::Array16,
        EntryClass::Tree16,
    ];

    pub fn is_multiplier(self) -> bool {
        !matches!(self, EntryClass::Cell | EntryClass::Compressor)
    }
}

impl fmt::Display for EntryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit enum serializes");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

impl FromStr for EntryClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Catalog(format!("unknown entry class `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PowerUnit {
    #[serde(rename = "nW")]
    NanoWatt,
    #[serde(rename = "uW")]
    MicroWatt,
}

/// One measured design.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub class: EntryClass,
    /// Absent for compressors.
    pub delay_ps: Option<f64>,
    /// In `power_unit`.
    pub power: f64,
    pub power_unit: PowerUnit,
    /// Transistor count.
    pub size: u64,
    pub source_table: String,
}

impl CatalogEntry {
    pub fn power_uw(&self) -> f64 {
        match self.power_unit {
            PowerUnit::NanoWatt => self.power / 1000.0,
            PowerUnit::MicroWatt => self.power,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    version: String,
    entries: Vec<CatalogEntry>,
    index: HashMap<String, usize>,
}

impl Catalog {
    /// Parses catalog CSV. Lines starting with `#` are comments; a
    /// `# version: X` comment sets the version.
    pub fn from_csv<R: Read>(mut reader: R) -> Result<Catalog> {
        let mut text = String::new();
        reader.read_to_string(&mut text)?;
        let version = text
            .lines()
            .filter_map(|l| l.strip_prefix('#'))
            .find_map(|l| l.trim().strip_prefix("version:"))
            .map(|v| v.trim().to_string())
            .unwrap_or_else(|| "unversioned".into());
        let mut rdr = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut entries = Vec::new();
        let mut index = HashMap::new();
        for row in rdr.deserialize::<CatalogEntry>() {
            let entry = row.map_err(|e| Error::Catalog(e.to_string()))?;
            if index.insert(entry.name.clone(), entries.len()).is_some() {
                return Err(Error::Catalog(format!("duplicate entry `{}`", entry.name)));
            }
            entries.push(entry);
        }
        if entries.is_empty() {
            return Err(Error::Catalog("no entries".into()));
        }
        Ok(Catalog {
            version,
            entries,
            index,
        })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Catalog> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Catalog::from_csv(file)
    }

    pub fn embedded() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::from_csv(EMBEDDED.as_bytes()).expect("embedded catalog parses"))
    }

    /// The catalog named by `AXMUL_CATALOG`, or the embedded one. Loaded
    /// once per process.
    pub fn active() -> Result<&'static Catalog> {
        static ACTIVE: OnceLock<std::result::Result<Catalog, String>> = OnceLock::new();
        let loaded = ACTIVE.get_or_init(|| match std::env::var_os(CATALOG_ENV) {
            Some(path) => Catalog::from_path(path).map_err(|e| e.to_string()),
            None => Ok(Catalog::embedded().clone()),
        });
        loaded.as_ref().map_err(|e| Error::Catalog(e.clone()))
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.index.get(name).map(|&i| &self.entries[i])
    }

    pub fn lookup(&self, name: &str) -> Result<&CatalogEntry> {
        self.get(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    pub fn of_class(&self, class: EntryClass) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.class == class)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for e in &self.entries {
            w.serialize(e)?;
        }
        let body = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(format!(
            "# version: {}\n{}",
            self.version,
            String::from_utf8_lossy(&body)
        ))
    }
}

/// Looks `name` up in the active catalog.
pub fn catalog_lookup(name: &str) -> Result<CatalogEntry> {
    Catalog::active()?.lookup(name).cloned()
}

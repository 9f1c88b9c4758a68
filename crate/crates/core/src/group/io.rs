use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// On-disk Cayley table: `{"order": n, "table": [[...]], "labels": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl TableFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        TableFile { order: g.order(), table: g.table_rows(), labels: Some(g.labels().to_vec()) }
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.table.len() != self.order {
            return Err(Error::NotAGroup(format!(
                "declared order {} but table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        FiniteGroup::from_table(self.table, self.labels)
    }
}

pub fn read_table_json(path: impl AsRef<Path>) -> Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)?;
    let file: TableFile = serde_json::from_str(&text)?;
    file.into_group()
}

pub fn write_table_json(g: &FiniteGroup, path: impl AsRef<Path>) -> Result<()> {
    let text = serde_json::to_string(&TableFile::from_group(g))?;
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_quaternion;

    #[test]
    fn reads_what_it_writes() {
        let q8 = build_quaternion(2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q8.json");
        write_table_json(&q8, &path).unwrap();
        let back = read_table_json(&path).unwrap();
        assert!(back.same_table(&q8));
        assert_eq!(back.labels(), q8.labels());
    }

    #[test]
    fn labels_are_optional_and_order_is_checked() {
        let text = r#"{"order": 2, "table": [[0,1],[1,0]]}"#;
        let f: TableFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.into_group().unwrap().order(), 2);
        let bad: TableFile = serde_json::from_str(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).unwrap();
        assert!(bad.into_group().is_err());
    }
}

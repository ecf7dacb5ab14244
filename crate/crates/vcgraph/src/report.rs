//! Pass/fail reporting shared by the cross-check and verification commands.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn record(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.items.push(CheckItem {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.pass)
    }
}

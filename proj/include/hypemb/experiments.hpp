#pragma once

#include "hypemb/config.hpp"
#include "hypemb/report.hpp"

namespace hypemb {

/// Experiment names accepted by run_experiment / the CLI subcommands.
///   threshold | compression | properness | embed-tree | walls | regularity | cover
///
/// Every run is a pure function of its configuration (seed included); the
/// worker count is an execution detail and is excluded from the report echo.
Report run_experiment(const std::string& name, const KeyValueConfig& provided);

/// The effective configuration (documented defaults overlaid with provided
/// keys) that a run of `name` would use.
KeyValueConfig effective_config(const std::string& name, const KeyValueConfig& provided);

}  // namespace hypemb

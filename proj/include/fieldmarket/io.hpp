#pragma once

// File formats. All readers take the full file text; `source` names the
// input in diagnostics. Rows are reported 1-based counting the header as
// line 1.
//
//   assets / probe points   asset_id,charge,f1,...,fk
//   path                    f1,...,fk
//   OHLCV bars              timestamp,open,high,low,close,volume
//   order book              side,limit_price,quantity
//   scenario                day,side,limit_price,quantity
//
// An empty limit_price is a market order.

#include <string>
#include <string_view>
#include <vector>

#include "fieldmarket/auction_sim.hpp"
#include "fieldmarket/energy_engine.hpp"
#include "fieldmarket/info_space.hpp"
#include "fieldmarket/series_energy.hpp"

namespace fieldmarket::io {

/// Fixed 12-significant-digit rendering used by every output.
std::string format_number(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Raw (unnormalized) asset rows.
struct AssetRow {
  std::string asset_id;
  double charge = 0.0;
  std::vector<double> features;
};

std::vector<AssetRow> parse_assets_csv(std::string_view text, std::string_view source = "assets");

std::vector<FeatureVector> parse_path_csv(std::string_view text, std::string_view source = "path");

std::vector<Bar> parse_ohlcv_csv(std::string_view text, std::string_view source = "bars");
std::string emit_ohlcv_csv(const std::vector<Bar>& bars);

std::vector<Order> parse_book_csv(std::string_view text, std::string_view source = "book");

std::vector<ScenarioDay> parse_scenario_csv(std::string_view text,
                                            std::string_view source = "scenario");

}  // namespace fieldmarket::io

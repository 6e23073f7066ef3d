#include "braces/json_io.hpp"

#include <fstream>

#include "braces/errors.hpp"

namespace braces {

  using nlohmann::ordered_json;

  ordered_json brace_to_json(BraceTable const& b) {
    ordered_json j;
    j["size"]                            = b.size();
    j["additive"]["invariant_factors"]   = b.additive().invariant_factors();
    ordered_json rows                    = ordered_json::array();
    for (std::size_t a = 0; a < b.size(); ++a) {
      auto row = b.row(static_cast<elem_t>(a));
      rows.push_back(std::vector<elem_t>(row.begin(), row.end()));
    }
    j["mul"]  = std::move(rows);
    j["meta"] = b.meta();
    return j;
  }

  BraceTable brace_from_json(ordered_json const& j) {
    try {
      if (!j.is_object()) {
        throw FormatError("brace document must be a JSON object");
      }
      auto const n       = j.at("size").get<std::size_t>();
      auto const factors = j.at("additive").at("invariant_factors").get<std::vector<std::uint64_t>>();
      FiniteAbelianGroup g(factors);
      if (g.order() != n) {
        throw FormatError("size " + std::to_string(n) + " does not match the additive group order "
                          + std::to_string(g.order()));
      }
      if (g.invariant_factors() != std::vector<std::uint32_t>(factors.begin(), factors.end())) {
        throw FormatError("invariant_factors must form a divisibility chain");
      }
      auto const& rows = j.at("mul");
      if (!rows.is_array() || rows.size() != n) {
        throw FormatError("mul must be an array of " + std::to_string(n) + " rows");
      }
      std::vector<elem_t> mul;
      mul.reserve(n * n);
      for (auto const& row : rows) {
        if (!row.is_array() || row.size() != n) {
          throw FormatError("every mul row must have " + std::to_string(n) + " entries");
        }
        for (auto const& v : row) {
          auto x = v.get<std::int64_t>();
          if (x < 0 || static_cast<std::size_t>(x) >= n) {
            throw FormatError("mul entry " + std::to_string(x) + " out of range");
          }
          mul.push_back(static_cast<elem_t>(x));
        }
      }
      Meta meta = j.contains("meta") ? j.at("meta") : Meta::object();
      return BraceTable(std::move(g), std::move(mul), std::move(meta));
    } catch (nlohmann::json::exception const& e) {
      throw FormatError(std::string("malformed brace JSON: ") + e.what());
    } catch (ResourceLimit const& e) {
      throw FormatError(e.what());
    } catch (IdentityViolation const&) {
      throw;
    } catch (std::invalid_argument const& e) {
      throw FormatError(e.what());
    }
  }

  void write_brace_file(std::filesystem::path const& path, BraceTable const& b) {
    std::ofstream out(path);
    if (!out) {
      throw std::runtime_error("cannot write " + path.string());
    }
    out << brace_to_json(b).dump() << "\n";
  }

  BraceTable read_brace_file(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw FormatError("cannot read " + path.string());
    }
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (nlohmann::json::exception const& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
    return brace_from_json(j);
  }

}  // namespace braces

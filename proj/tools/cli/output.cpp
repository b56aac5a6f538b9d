#include "output.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>

#include "dynregret/error.hpp"

namespace dynregret::cli {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  const std::size_t dim = trace.rounds.empty() ? 1 : trace.rounds.front().decision.dim();
  out << "t,";
  if (dim == 1) {
    out << "w,";
  } else {
    for (std::size_t i = 0; i < dim; ++i) out << 'w' << (i + 1) << ',';
  }
  out << "f,f_star,regret\n";
  for (const RoundRecord& r : trace.rounds) {
    out << r.t << ',';
    for (std::size_t i = 0; i < dim; ++i) out << format_double(r.decision[i]) << ',';
    out << format_double(r.loss_value) << ',' << format_double(r.optimal_value) << ','
        << format_double(r.per_step_regret) << '\n';
  }
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("write failed for '" + path + "'");
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace dynregret::cli

#include "pcops/trace_io.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "format.hpp"
#include "pcops/errors.hpp"

namespace pcops {

namespace {

using json = nlohmann::ordered_json;

std::string os_error(const std::filesystem::path& path, const char* action) {
  return std::string(action) + " '" + path.string() + "': " + std::strerror(errno);
}

}  // namespace

std::string trace_to_csv(const IterationTrace& trace) {
  std::string out = "k,residual_sq,dist_to_ref\n";
  for (std::size_t k = 0; k < trace.iterations(); ++k) {
    out += std::to_string(k);
    out += ',';
    out += detail::sig17(trace.residual_sq[k]);
    out += ',';
    if (trace.dist_to_ref) out += detail::sig17((*trace.dist_to_ref)[k]);
    out += '\n';
  }
  return out;
}

std::string trace_to_json(const IterationTrace& trace) {
  json j;
  j["method"] = trace.method;
  j["seed"] = trace.seed;
  j["N"] = trace.iterations();
  j["requested"] = trace.requested;
  json pts = json::array();
  for (const Point& p : trace.points)
    pts.push_back(std::vector<double>(p.coords().data(), p.coords().data() + p.dim()));
  j["points"] = std::move(pts);
  j["residual_sq"] = trace.residual_sq;
  j["dist_to_ref"] = trace.dist_to_ref ? json(*trace.dist_to_ref) : json(nullptr);
  return j.dump(1) + "\n";
}

IterationTrace trace_from_json(std::string_view text) {
  IterationTrace t;
  try {
    const json j = json::parse(text);
    t.method = j.at("method").get<std::string>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.requested = j.at("requested").get<std::size_t>();
    for (const auto& p : j.at("points")) {
      const auto v = p.get<std::vector<double>>();
      t.points.emplace_back(Vector(Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()))));
    }
    t.residual_sq = j.at("residual_sq").get<std::vector<double>>();
    if (!j.at("dist_to_ref").is_null()) t.dist_to_ref = j.at("dist_to_ref").get<std::vector<double>>();
    if (j.at("N").get<std::size_t>() != t.residual_sq.size())
      throw InputError("trace JSON: N disagrees with residual_sq length");
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("trace JSON: ") + e.what());
  }
  return t;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError(os_error(path, "cannot open"));
  f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  f.close();
  if (!f) throw IoError(os_error(path, "cannot write"));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError(os_error(path, "cannot open"));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit_trace(const IterationTrace& trace, const std::filesystem::path& path, TraceFormat format) {
  write_text_file(path, format == TraceFormat::Csv ? trace_to_csv(trace) : trace_to_json(trace));
}

}  // namespace pcops

#include "sbp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sbp {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string rstr(const Rational& r) { return r.str(); }

Rational rparse(const ordered_json& j, const char* field) {
  if (!j.is_string()) throw ParseError(std::string(field) + " must be a rational string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

mpz_class zparse(const ordered_json& j, const char* field) {
  if (j.is_number_unsigned() || j.is_number_integer())
    return mpz_class((long)j.get<long long>());
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw ParseError(std::string(field) + " must be an integer or integer string");
}

ordered_json zdump(const mpz_class& z) {
  if (z.fits_slong_p()) return ordered_json(z.get_si());
  return ordered_json(z.get_str());
}

}  // namespace

std::string InstanceFile::to_json() const {
  ordered_json doc;
  ordered_json arr = ordered_json::array();
  for (const auto& it : items) {
    ordered_json o;
    o["id"] = it.id;
    o["w"] = rstr(it.shape.w);
    o["h"] = rstr(it.shape.h);
    arr.push_back(o);
  }
  doc["items"] = arr;
  if (assignment) {
    ordered_json a = ordered_json::object();
    for (const auto& [id, bin] : *assignment) a[std::to_string(id)] = bin;
    doc["assignment"] = a;
  }
  if (placements) {
    ordered_json p = ordered_json::array();
    for (const auto& pl : *placements) {
      ordered_json o;
      o["id"] = pl.id;
      o["bin"] = pl.bin;
      o["x"] = rstr(pl.x);
      o["y"] = rstr(pl.y);
      p.push_back(o);
    }
    doc["placements"] = p;
  }
  if (sand) {
    ordered_json s = ordered_json::array();
    for (const auto& rec : *sand) {
      ordered_json o;
      o["bin"] = rec.bin;
      o["side"] = rstr(rec.side);
      o["count"] = zdump(rec.count);
      s.push_back(o);
    }
    doc["sand"] = s;
  }
  if (bin_groups) {
    ordered_json gs = ordered_json::array();
    for (const auto& g : bin_groups->groups) {
      ordered_json o;
      ordered_json parts = ordered_json::array();
      for (const auto& [shape, count] : g.content.parts) {
        ordered_json p;
        p["w"] = rstr(shape.w);
        p["h"] = rstr(shape.h);
        p["count"] = zdump(count);
        parts.push_back(p);
      }
      o["contents"] = parts;
      o["multiplicity"] = zdump(g.multiplicity);
      gs.push_back(o);
    }
    doc["bin_groups"] = gs;
  }
  return doc.dump(2) + "\n";
}

InstanceFile InstanceFile::from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
  InstanceFile f;
  if (!doc.contains("items")) throw ParseError("missing 'items'");
  for (const auto& o : doc["items"]) {
    if (!o.contains("id") || !o.contains("w") || !o.contains("h"))
      throw ParseError("item needs id, w, h");
    f.items.emplace_back(o["id"].get<int>(), Rect(rparse(o["w"], "w"), rparse(o["h"], "h")));
  }
  if (doc.contains("assignment")) {
    std::map<int, int> a;
    for (auto it = doc["assignment"].begin(); it != doc["assignment"].end(); ++it)
      a[std::stoi(it.key())] = it.value().get<int>();
    f.assignment = std::move(a);
  }
  if (doc.contains("placements")) {
    std::vector<PlacementRecord> ps;
    for (const auto& o : doc["placements"])
      ps.push_back({o["id"].get<int>(), o["bin"].get<int>(), rparse(o["x"], "x"),
                    rparse(o["y"], "y")});
    f.placements = std::move(ps);
  }
  if (doc.contains("sand")) {
    std::vector<SandRecord> ss;
    for (const auto& o : doc["sand"])
      ss.push_back({o["bin"].get<int>(), rparse(o["side"], "side"),
                    zparse(o["count"], "count")});
    f.sand = std::move(ss);
  }
  if (doc.contains("bin_groups")) {
    GroupedConfig g;
    for (const auto& o : doc["bin_groups"]) {
      BinContent content;
      for (const auto& p : o["contents"])
        content.add(Rect(rparse(p["w"], "w"), rparse(p["h"], "h")),
                    zparse(p["count"], "count"));
      g.add_bin(content, zparse(o["multiplicity"], "multiplicity"));
    }
    f.bin_groups = std::move(g);
  }
  return f;
}

void InstanceFile::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_json();
}

InstanceFile InstanceFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

Configuration InstanceFile::to_configuration() const {
  if (!assignment) throw ParseError("instance has no assignment");
  return Configuration(items, *assignment);
}

InstanceFile InstanceFile::from_configuration(const Configuration& c) {
  InstanceFile f;
  f.items = c.items();
  f.assignment = c.assignment();
  return f;
}

InstanceFile InstanceFile::from_items(const std::vector<Item>& items) {
  InstanceFile f;
  f.items = items;
  return f;
}

}  // namespace sbp

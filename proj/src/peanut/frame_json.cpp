#include "peanut/frame_json.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "peanut/errors.hpp"

namespace peanut {

namespace {

using ojson = nlohmann::ordered_json;

ojson frame_doc(const ObservationFrame& frame) {
  ojson dates = ojson::array();
  for (const auto& d : frame.dates()) dates.push_back(d.iso());

  ojson columns = ojson::object();
  ojson roles = ojson::object();
  for (const auto& name : frame.column_names()) {
    const auto& values = frame.values(name);
    const auto& mask = frame.mask(name);
    ojson cells = ojson::array();
    for (size_t i = 0; i < values.size(); ++i) {
      if (mask[i]) {
        cells.push_back(values[i]);
      } else {
        cells.push_back(nullptr);
      }
    }
    columns[name] = std::move(cells);
    roles[name] = role_name(frame.role(name));
  }

  ojson doc;
  doc["kind"] = "frame";
  doc["dates"] = std::move(dates);
  doc["columns"] = std::move(columns);
  doc["roles"] = std::move(roles);
  return doc;
}

ObservationFrame frame_from_doc(const ojson& doc) {
  std::vector<CalendarDate> dates;
  for (const auto& d : doc.at("dates")) {
    dates.push_back(CalendarDate::from_iso(d.get<std::string>()));
  }

  const ojson& roles = doc.contains("roles") ? doc.at("roles") : ojson::object();
  std::vector<ColumnSpec> specs;
  for (const auto& [name, cells] : doc.at("columns").items()) {
    ColumnSpec spec;
    spec.name = name;
    spec.values.reserve(cells.size());
    spec.mask.reserve(cells.size());
    for (const auto& cell : cells) {
      if (cell.is_null()) {
        spec.values.push_back(0.0);
        spec.mask.push_back(0);
      } else if (cell.is_number()) {
        spec.values.push_back(cell.get<double>());
        spec.mask.push_back(1);
      } else {
        fail(Errc::parse_error, "column '" + name + "' holds a non-numeric cell");
      }
    }
    if (roles.contains(name)) {
      spec.role = role_from_name(roles.at(name).get<std::string>());
    }
    specs.push_back(std::move(spec));
  }
  return ObservationFrame::build(std::move(dates), std::move(specs));
}

const char* provenance_tag(CellProvenance p) {
  switch (p) {
    case CellProvenance::real: return "real";
    case CellProvenance::synthetic: return "synthetic";
    case CellProvenance::missing: return "missing";
  }
  return "missing";
}

CellProvenance provenance_from_tag(const std::string& tag) {
  if (tag == "real") return CellProvenance::real;
  if (tag == "synthetic") return CellProvenance::synthetic;
  if (tag == "missing") return CellProvenance::missing;
  fail(Errc::parse_error, "unknown provenance tag '" + tag + "'");
}

}  // namespace

std::string frame_to_json(const ObservationFrame& frame) {
  return frame_doc(frame).dump(2) + "\n";
}

ObservationFrame frame_from_json(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("frame document: ") + e.what());
  }
  try {
    return frame_from_doc(doc);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("frame document: ") + e.what());
  }
}

std::string hybrid_to_json(const HybridFrame& hybrid) {
  ojson doc = frame_doc(hybrid.frame);
  ojson cells = ojson::array();
  for (CellProvenance p : hybrid.provenance) cells.push_back(provenance_tag(p));
  ojson prov;
  prov["column"] = hybrid.target;
  prov["strategy"] = hybrid.strategy;
  prov["cells"] = std::move(cells);
  prov["unfilled_rows"] = hybrid.unfilled_rows;
  doc["provenance"] = std::move(prov);
  return doc.dump(2) + "\n";
}

HybridFrame hybrid_from_json(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("hybrid document: ") + e.what());
  }
  try {
    HybridFrame hybrid;
    hybrid.frame = frame_from_doc(doc);
    const auto& prov = doc.at("provenance");
    hybrid.target = prov.at("column").get<std::string>();
    hybrid.strategy = prov.at("strategy").get<std::string>();
    for (const auto& cell : prov.at("cells")) {
      hybrid.provenance.push_back(provenance_from_tag(cell.get<std::string>()));
    }
    if (prov.contains("unfilled_rows")) {
      hybrid.unfilled_rows = prov.at("unfilled_rows").get<std::vector<size_t>>();
    }
    if (hybrid.provenance.size() != hybrid.frame.rows()) {
      fail(Errc::parse_error, "provenance length does not match row count");
    }
    if (!hybrid.frame.has_column(hybrid.target)) {
      fail(Errc::parse_error, "provenance names a column the frame lacks");
    }
    return hybrid;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("hybrid document: ") + e.what());
  }
}

HybridFrame document_from_json(const std::string& text) {
  ojson doc;
  try {
    doc = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("frame document: ") + e.what());
  }
  if (doc.is_object() && doc.contains("provenance")) return hybrid_from_json(text);
  HybridFrame plain;
  plain.frame = frame_from_json(text);
  return plain;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::file_not_found, path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(Errc::io_error, "reading " + path);
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(Errc::io_error, "cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(Errc::io_error, "writing " + path);
}

ObservationFrame read_frame_file(const std::string& path) {
  return frame_from_json(read_text_file(path));
}

void write_frame_file(const std::string& path, const ObservationFrame& frame) {
  write_text_file(path, frame_to_json(frame));
}

}  // namespace peanut

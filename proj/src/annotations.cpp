// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/annotations.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace voxaug {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, int line_no, const char* what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParseError(std::string("read_annotations: non-numeric ") + what + " '" + s +
                         "' on line " + std::to_string(line_no));
    }
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size())
        throw ParseError(std::string("read_annotations: non-numeric ") + what + " '" + s +
                         "' on line " + std::to_string(line_no));
    return v;
}

}  // namespace

std::vector<Annotation> read_annotations(const std::filesystem::path& path,
                                         AnnotationKind kind) {
    std::ifstream in(path);
    if (!in) throw IoError("read_annotations: cannot open " + path.string());

    std::vector<Annotation> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1) continue;  // header row
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv(line);
        if (fields.size() != 5)
            throw ParseError("read_annotations: expected 5 columns, got " +
                             std::to_string(fields.size()) + " on line " +
                             std::to_string(line_no));

        Annotation a;
        a.series_id = fields[0];
        if (a.series_id.empty())
            throw ParseError("read_annotations: empty seriesuid on line " +
                             std::to_string(line_no));
        const double wx = parse_number(fields[1], line_no, "coordX");
        const double wy = parse_number(fields[2], line_no, "coordY");
        const double wz = parse_number(fields[3], line_no, "coordZ");
        a.center_world = WorldPoint{wz, wy, wx};

        if (kind == AnnotationKind::annotations) {
            const double d = parse_number(fields[4], line_no, "diameter_mm");
            if (!(d > 0.0))
                throw ParseError("read_annotations: non-positive diameter on line " +
                                 std::to_string(line_no));
            a.diameter_mm = d;
        } else {
            const double cls = parse_number(fields[4], line_no, "class");
            a.label = cls != 0.0 ? NoduleLabel::nodule : NoduleLabel::non_nodule;
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace voxaug

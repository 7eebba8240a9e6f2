// Copyright 2026 The voxaug authors
// SPDX-License-Identifier: Apache-2.0

#include "voxaug/mhd_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace voxaug {

namespace {

enum class ElementType { met_short, met_ushort, met_uchar, met_float };

std::size_t element_size(ElementType t) {
    switch (t) {
        case ElementType::met_short:
        case ElementType::met_ushort: return 2;
        case ElementType::met_uchar: return 1;
        case ElementType::met_float: return 4;
    }
    return 0;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_triple(const std::string& value, double out[3]) {
    std::istringstream iss(value);
    return static_cast<bool>(iss >> out[0] >> out[1] >> out[2]);
}

struct Header {
    int ndims = 0;
    // header-order (x, y, z)
    long long dim[3] = {0, 0, 0};
    double spacing[3] = {1.0, 1.0, 1.0};
    double offset[3] = {0.0, 0.0, 0.0};
    ElementType type = ElementType::met_short;
    bool have_type = false;
    bool have_dims = false;
    std::string data_file;
    std::streampos local_payload_start = -1;
};

Header parse_header(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_volume: cannot open header " + path.string());

    Header h;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("read_volume: malformed header line '" + line + "' in " +
                             path.string());
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "NDims") {
            h.ndims = std::stoi(value);
            if (h.ndims != 3)
                throw ParseError("read_volume: NDims " + value + " unsupported, need 3");
        } else if (key == "DimSize") {
            double d[3];
            if (!parse_triple(value, d))
                throw ParseError("read_volume: bad DimSize '" + value + "'");
            for (int a = 0; a < 3; ++a) h.dim[a] = static_cast<long long>(d[a]);
            h.have_dims = true;
        } else if (key == "ElementSpacing") {
            if (!parse_triple(value, h.spacing))
                throw ParseError("read_volume: bad ElementSpacing '" + value + "'");
        } else if (key == "Offset" || key == "Position" || key == "Origin") {
            if (!parse_triple(value, h.offset))
                throw ParseError("read_volume: bad Offset '" + value + "'");
        } else if (key == "ElementType") {
            if (value == "MET_SHORT") h.type = ElementType::met_short;
            else if (value == "MET_USHORT") h.type = ElementType::met_ushort;
            else if (value == "MET_UCHAR") h.type = ElementType::met_uchar;
            else if (value == "MET_FLOAT") h.type = ElementType::met_float;
            else
                throw ParseError("read_volume: unsupported element type " + value);
            h.have_type = true;
        } else if (key == "ElementByteOrderMSB" || key == "BinaryDataByteOrderMSB") {
            if (value == "True" || value == "true" || value == "1")
                throw ParseError("read_volume: big-endian payloads are unsupported");
        } else if (key == "CompressedData") {
            if (value == "True" || value == "true" || value == "1")
                throw ParseError("read_volume: compressed payloads are unsupported");
        } else if (key == "ElementNumberOfChannels") {
            if (value != "1")
                throw ParseError("read_volume: multi-channel payloads are unsupported");
        } else if (key == "BinaryData" || key == "ObjectType" ||
                   key == "TransformMatrix" || key == "CenterOfRotation" ||
                   key == "AnatomicalOrientation") {
            // accepted but unused; identity orientation is assumed
        } else if (key == "ElementDataFile") {
            h.data_file = value;
            if (value == "LOCAL") h.local_payload_start = in.tellg();
            break;  // ElementDataFile terminates the header
        } else {
            std::cerr << "read_volume: ignoring unknown header field '" << key << "'\n";
        }
    }
    if (!h.have_dims) throw ParseError("read_volume: header missing DimSize");
    if (!h.have_type) throw ParseError("read_volume: header missing ElementType");
    if (h.data_file.empty()) throw ParseError("read_volume: header missing ElementDataFile");
    for (int a = 0; a < 3; ++a)
        if (h.dim[a] <= 0) throw ParseError("read_volume: non-positive DimSize component");
    return h;
}

std::vector<char> read_payload(const std::filesystem::path& header_path, const Header& h,
                               std::size_t expected_bytes) {
    std::vector<char> bytes;
    if (h.data_file == "LOCAL") {
        std::ifstream in(header_path, std::ios::binary);
        in.seekg(h.local_payload_start);
        bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::filesystem::path raw = header_path.parent_path() / h.data_file;
        std::ifstream in(raw, std::ios::binary);
        if (!in) throw IoError("read_volume: raw data file missing: " + raw.string());
        bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    if (bytes.size() != expected_bytes)
        throw ParseError("read_volume: payload is " + std::to_string(bytes.size()) +
                         " bytes but DimSize*ElementSize requires " +
                         std::to_string(expected_bytes));
    return bytes;
}

}  // namespace

Volume read_volume(const std::filesystem::path& header_path) {
    Header h = parse_header(header_path);

    const std::size_t n = static_cast<std::size_t>(h.dim[0]) * h.dim[1] * h.dim[2];
    std::vector<char> bytes = read_payload(header_path, h, n * element_size(h.type));

    Volume v;
    // header order is (x,y,z); internal order is (z,y,x)
    v.dims = {static_cast<int>(h.dim[2]), static_cast<int>(h.dim[1]),
              static_cast<int>(h.dim[0])};
    v.spacing = {h.spacing[2], h.spacing[1], h.spacing[0]};
    v.origin = {h.offset[2], h.offset[1], h.offset[0]};
    v.data.resize(n);

    switch (h.type) {
        case ElementType::met_short: {
            const std::int16_t* p = reinterpret_cast<const std::int16_t*>(bytes.data());
            for (std::size_t i = 0; i < n; ++i) v.data[i] = static_cast<float>(p[i]);
            v.kind = VolumeKind::raw_ct;
            break;
        }
        case ElementType::met_ushort: {
            const std::uint16_t* p = reinterpret_cast<const std::uint16_t*>(bytes.data());
            for (std::size_t i = 0; i < n; ++i) v.data[i] = static_cast<float>(p[i]);
            v.kind = VolumeKind::raw_ct;
            break;
        }
        case ElementType::met_uchar: {
            const std::uint8_t* p = reinterpret_cast<const std::uint8_t*>(bytes.data());
            bool binary = true;
            for (std::size_t i = 0; i < n; ++i) {
                v.data[i] = static_cast<float>(p[i]);
                binary = binary && (p[i] == 0 || p[i] == 1);
            }
            v.kind = binary ? VolumeKind::mask : VolumeKind::raw_ct;
            break;
        }
        case ElementType::met_float: {
            const float* p = reinterpret_cast<const float*>(bytes.data());
            bool unit = true;
            for (std::size_t i = 0; i < n; ++i) {
                v.data[i] = p[i];
                unit = unit && p[i] >= 0.0f && p[i] <= 1.0f;
            }
            v.kind = unit ? VolumeKind::normalized : VolumeKind::raw_ct;
            break;
        }
    }
    validate(v);
    return v;
}

void write_volume(const Volume& v, const std::filesystem::path& header_path) {
    validate(v);

    ElementType type;
    switch (v.kind) {
        case VolumeKind::raw_ct: type = ElementType::met_short; break;
        case VolumeKind::mask: type = ElementType::met_uchar; break;
        case VolumeKind::normalized:
        default: type = ElementType::met_float; break;
    }

    std::filesystem::path raw_path = header_path;
    raw_path.replace_extension(".raw");

    const std::size_t n = v.voxel_count();
    std::vector<char> bytes(n * element_size(type));
    switch (type) {
        case ElementType::met_short: {
            std::int16_t* p = reinterpret_cast<std::int16_t*>(bytes.data());
            for (std::size_t i = 0; i < n; ++i)
                p[i] = static_cast<std::int16_t>(std::llround(v.data[i]));
            break;
        }
        case ElementType::met_uchar: {
            std::uint8_t* p = reinterpret_cast<std::uint8_t*>(bytes.data());
            for (std::size_t i = 0; i < n; ++i) p[i] = v.data[i] != 0.0f ? 1 : 0;
            break;
        }
        default: {
            std::memcpy(bytes.data(), v.data.data(), bytes.size());
            break;
        }
    }

    const char* type_name = type == ElementType::met_short  ? "MET_SHORT"
                            : type == ElementType::met_uchar ? "MET_UCHAR"
                                                             : "MET_FLOAT";
    std::ostringstream header;
    header << "ObjectType = Image\n"
           << "NDims = 3\n"
           << "BinaryData = True\n"
           << "BinaryDataByteOrderMSB = False\n"
           << "DimSize = " << v.dims[2] << ' ' << v.dims[1] << ' ' << v.dims[0] << '\n';
    header.precision(17);
    header << "ElementSpacing = " << v.spacing[2] << ' ' << v.spacing[1] << ' ' << v.spacing[0]
           << '\n'
           << "Offset = " << v.origin[2] << ' ' << v.origin[1] << ' ' << v.origin[0] << '\n'
           << "ElementType = " << type_name << '\n'
           << "ElementDataFile = " << raw_path.filename().string() << '\n';

    std::ofstream hout(header_path, std::ios::binary | std::ios::trunc);
    if (!hout || !(hout << header.str()))
        throw IoError("write_volume: cannot write header " + header_path.string());
    hout.close();

    std::ofstream rout(raw_path, std::ios::binary | std::ios::trunc);
    if (!rout || !rout.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
        throw IoError("write_volume: cannot write raw payload " + raw_path.string());
}

}  // namespace voxaug

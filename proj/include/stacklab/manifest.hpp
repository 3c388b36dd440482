#pragma once

// Line-delimited JSON encoding of scenes, sample records and manifests.
// Line 0 is the header object ("type":"header"); each following line is one
// sample record.

#include <filesystem>
#include <istream>
#include <string>

#include <json.hpp>
#include "stacklab/generator.hpp"

namespace stacklab {

using Json = nlohmann::ordered_json;

Json scene_to_json(const Scene& scene);
Scene scene_from_json(const Json& j);

Json stability_to_json(const StabilityReport& report);
Json spec_to_json(const GenSpec& spec);
GenSpec spec_from_json(const Json& j);

Json record_to_json(const SampleRecord& record);
SampleRecord record_from_json(const Json& j);

Json header_to_json(const ManifestHeader& header);

/// Compact single-line dump; doubles use shortest round-trip form.
std::string dump_line(const Json& j);

std::string manifest_to_string(const Manifest& manifest);
Manifest manifest_from_stream(std::istream& in);
Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace stacklab

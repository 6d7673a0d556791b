#ifndef FORMA_JSON_IO_HPP
#define FORMA_JSON_IO_HPP

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "forma/bicategory.hpp"
#include "forma/fincat.hpp"
#include "forma/form.hpp"
#include "forma/report.hpp"

namespace forma {

using Json = nlohmann::ordered_json;

/// Schema-version mismatches and malformed documents.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Serializations are canonical: fixed key order, two-space indent, trailing
// newline. load(save(x)) is the identity and save(load(doc)) is byte-stable.
Json category_to_json(const FinCategory& c);
CatPtr category_from_json(const Json& j);

Json form_to_json(const Form& f);
Form form_from_json(const Json& j);

Json bicategory_to_json(const Bicategory& b);
Bicategory bicategory_from_json(const Json& j);

Json report_to_json(const CheckReport& r);

std::string dump_canonical(const Json& j);

/// Dispatch on the "schema" field: "fincat/1", "form/1" or "bicat/1".
std::string schema_of(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

}  // namespace forma

#endif

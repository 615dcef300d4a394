#pragma once

#include <span>
#include <string>
#include <string_view>

namespace colsnn {

std::string sha1_hex(std::span<const unsigned char> bytes);

// Hash git assigns to a blob with this content.
std::string git_blob_hash(std::string_view content);

}  // namespace colsnn

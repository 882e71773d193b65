// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "view.hpp"

#include <filesystem>

namespace lamina
{
    /// Writes `<stem>.meta` (text sidecar: schema, extents, dynamic extent
    /// values, mapping name, blob count and sizes) and one raw
    /// `<stem>.blob<k>.bin` file per blob. Blob bytes are the in-memory
    /// bytes; all mappings store little-endian, so dumps are
    /// platform-independent. The mapping's name must be expressible in the
    /// layout grammar to be restorable.
    void writeViewDump(const View& view, const std::filesystem::path& stem);

    /// Restores a dumped view: parses the sidecar, rebuilds the mapping via
    /// the layout grammar and adopts the blob files. Throws
    /// std::runtime_error on missing files or size mismatches.
    View readViewDump(const std::filesystem::path& stem);
} // namespace lamina

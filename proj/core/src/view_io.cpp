// SPDX-License-Identifier: Apache-2.0
#include <lamina/layout_spec.hpp>
#include <lamina/view_io.hpp>

#include <fstream>
#include <map>
#include <stdexcept>

namespace lamina
{
    namespace
    {
        std::filesystem::path metaPath(const std::filesystem::path& stem)
        {
            auto p = stem;
            p += ".meta";
            return p;
        }

        std::filesystem::path blobPath(const std::filesystem::path& stem, std::size_t nr)
        {
            auto p = stem;
            p += ".blob" + std::to_string(nr) + ".bin";
            return p;
        }
    } // namespace

    void writeViewDump(const View& view, const std::filesystem::path& stem)
    {
        std::ofstream meta(metaPath(stem));
        if(!meta)
            throw std::runtime_error("cannot write " + metaPath(stem).string());
        meta << "schema=" << view.schema().toString() << '\n';
        meta << "extents=" << view.extents().toString() << '\n';
        meta << "extent-values=";
        const auto& dynValues = view.extents().dynamicValues();
        for(std::size_t i = 0; i < dynValues.size(); ++i)
            meta << (i > 0 ? "," : "") << dynValues[i];
        meta << '\n';
        meta << "mapping=" << view.mapping().name() << '\n';
        meta << "blobs=" << view.blobs().size() << '\n';
        for(std::size_t nr = 0; nr < view.blobs().size(); ++nr)
            meta << "blob" << nr << "-size=" << view.blobs()[nr].size() << '\n';
        meta.close();
        if(!meta)
            throw std::runtime_error("cannot write " + metaPath(stem).string());

        for(std::size_t nr = 0; nr < view.blobs().size(); ++nr)
        {
            std::ofstream out(blobPath(stem, nr), std::ios::binary);
            if(!out)
                throw std::runtime_error("cannot write " + blobPath(stem, nr).string());
            out.write(
                reinterpret_cast<const char*>(view.blobs()[nr].data()),
                static_cast<std::streamsize>(view.blobs()[nr].size()));
            out.close();
            if(!out)
                throw std::runtime_error("cannot write " + blobPath(stem, nr).string());
        }
    }

    View readViewDump(const std::filesystem::path& stem)
    {
        std::ifstream meta(metaPath(stem));
        if(!meta)
            throw std::runtime_error("cannot read " + metaPath(stem).string());
        std::map<std::string, std::string> kv;
        std::string line;
        while(std::getline(meta, line))
        {
            if(line.empty())
                continue;
            const std::size_t eq = line.find('=');
            if(eq == std::string::npos)
                throw std::runtime_error("malformed sidecar line: '" + line + "'");
            kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
        const auto field = [&](const std::string& key) -> const std::string&
        {
            const auto it = kv.find(key);
            if(it == kv.end())
                throw std::runtime_error("sidecar missing field '" + key + "'");
            return it->second;
        };

        const RecordSchema schema = RecordSchema::parse(field("schema"));
        std::vector<std::uint64_t> dynValues;
        if(const std::string& values = field("extent-values"); !values.empty())
        {
            std::size_t start = 0;
            while(start <= values.size())
            {
                const std::size_t comma = values.find(',', start);
                const std::string tok
                    = comma == std::string::npos ? values.substr(start) : values.substr(start, comma - start);
                dynValues.push_back(std::stoull(tok));
                if(comma == std::string::npos)
                    break;
                start = comma + 1;
            }
        }
        const ArrayExtents extents = ArrayExtents::parse(field("extents"), dynValues);
        MappingPtr mapping = parseLayout(field("mapping"), schema, extents);

        const std::size_t blobCount = std::stoull(field("blobs"));
        if(blobCount != mapping->blobCount())
            throw std::runtime_error(
                "blob count mismatch: sidecar says " + std::to_string(blobCount) + ", mapping declares "
                + std::to_string(mapping->blobCount()));
        std::vector<Blob> blobs;
        blobs.reserve(blobCount);
        for(std::size_t nr = 0; nr < blobCount; ++nr)
        {
            const std::size_t declared = std::stoull(field("blob" + std::to_string(nr) + "-size"));
            if(declared != mapping->blobSize(nr))
                throw std::runtime_error(
                    "blob size mismatch: blob " + std::to_string(nr) + " sidecar says " + std::to_string(declared)
                    + ", mapping declares " + std::to_string(mapping->blobSize(nr)));
            std::ifstream in(blobPath(stem, nr), std::ios::binary);
            if(!in)
                throw std::runtime_error("cannot read " + blobPath(stem, nr).string());
            Blob blob(declared);
            in.read(reinterpret_cast<char*>(blob.data()), static_cast<std::streamsize>(declared));
            if(static_cast<std::size_t>(in.gcount()) != declared)
                throw std::runtime_error("blob file truncated: " + blobPath(stem, nr).string());
            blobs.push_back(std::move(blob));
        }
        return View(std::move(mapping), std::move(blobs));
    }
} // namespace lamina

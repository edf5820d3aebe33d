#ifndef GRIDKIT_REGISTRY_REGISTRY_HH
#define GRIDKIT_REGISTRY_REGISTRY_HH

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <gridkit/common/exceptions.hh>
#include <gridkit/registry/typename.hh>

namespace gridkit
{

  //! object together with the descriptor of the type that produced it
  template< class T >
  struct Tagged
  {
    T object;
    TypeDescriptor descriptor;
  };

  /** \brief insertion ordered set of types with their factories
   *
   *  insertClass keeps the first factory registered for a type name.
   *  Named factories map a name and JSON parameters to a descriptor;
   *  resolve() registers that descriptor on first use and constructs the
   *  object through the stored factory.
   */
  template< class Product >
  class Registry
  {
  public:
    using Params = nlohmann::json;
    using Factory = std::function< Product( const Params & ) >;
    using Describe = std::function< TypeDescriptor( const Params & ) >;

    struct Entry
    {
      TypeDescriptor descriptor;
      Factory factory;
    };

    //! returns the entry position and whether it was newly inserted
    std::pair< std::size_t, bool > insertClass ( const TypeDescriptor &descriptor, Factory factory )
    {
      auto it = byName_.find( descriptor.typeName );
      if( it != byName_.end() )
        return { it->second, false };
      entries_.push_back( { descriptor, std::move( factory ) } );
      byName_.emplace( descriptor.typeName, entries_.size() - 1 );
      return { entries_.size() - 1, true };
    }

    const Entry &entry ( std::size_t handle ) const { return entries_.at( handle ); }
    const std::vector< Entry > &entries () const noexcept { return entries_; }
    std::size_t size () const noexcept { return entries_.size(); }

    bool contains ( const std::string &typeName ) const { return byName_.count( typeName ) > 0; }

    void registerFactory ( const std::string &name, Describe describe, Factory factory )
    {
      factories_[ name ] = { std::move( describe ), std::move( factory ) };
      names_.push_back( name );
    }

    const std::vector< std::string > &factoryNames () const noexcept { return names_; }

    Tagged< Product > resolve ( const std::string &name, const Params &params )
    {
      auto it = factories_.find( name );
      if( it == factories_.end() )
      {
        std::string known;
        for( const auto &n : names_ )
          known += ( known.empty() ? "" : ", " ) + n;
        throw LookupError( "unknown factory '" + name + "' (registered: " + known + ")" );
      }
      const TypeDescriptor descriptor = it->second.first( params );
      const auto [ handle, isNew ] = insertClass( descriptor, it->second.second );
      ++( isNew ? misses_ : hits_ );
      return { entries_[ handle ].factory( params ), descriptor };
    }

    //! resolve() calls that found their type already registered
    std::size_t cacheHits () const noexcept { return hits_; }
    std::size_t cacheMisses () const noexcept { return misses_; }

  private:
    std::vector< Entry > entries_;
    std::map< std::string, std::size_t > byName_;
    std::map< std::string, std::pair< Describe, Factory > > factories_;
    std::vector< std::string > names_;
    std::size_t hits_ = 0;
    std::size_t misses_ = 0;
  };

} // namespace gridkit

#endif // GRIDKIT_REGISTRY_REGISTRY_HH

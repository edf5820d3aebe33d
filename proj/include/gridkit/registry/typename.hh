#ifndef GRIDKIT_REGISTRY_TYPENAME_HH
#define GRIDKIT_REGISTRY_TYPENAME_HH

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <openssl/evp.h>

#include <gridkit/common/exceptions.hh>

namespace gridkit
{

  //! C++ type name together with the headers needed to use it
  struct TypeDescriptor
  {
    std::string typeName;
    std::vector< std::string > includes;

    friend bool operator== ( const TypeDescriptor &, const TypeDescriptor & ) = default;
  };

  using TypeArgument = std::variant< TypeDescriptor, long long, std::string >;

  //! append the entries of \p add not yet contained in \p includes
  inline void mergeIncludes ( std::vector< std::string > &includes, const std::vector< std::string > &add )
  {
    for( const auto &inc : add )
      if( std::find( includes.begin(), includes.end(), inc ) == includes.end() )
        includes.push_back( inc );
  }

  /** \brief compose "Base< a1, a2 >" from a base name and template arguments
   *
   *  Descriptor arguments contribute their includes; \p includes are added
   *  first.
   */
  inline TypeDescriptor generateTypeName ( const std::string &base, const std::vector< TypeArgument > &args = {},
                                           const std::vector< std::string > &includes = {} )
  {
    TypeDescriptor d{ base, {} };
    mergeIncludes( d.includes, includes );
    if( args.empty() )
      return d;
    d.typeName += "< ";
    for( std::size_t i = 0; i < args.size(); ++i )
    {
      if( i > 0 )
        d.typeName += ", ";
      if( const auto *t = std::get_if< TypeDescriptor >( &args[ i ] ) )
      {
        d.typeName += t->typeName;
        mergeIncludes( d.includes, t->includes );
      }
      else if( const auto *n = std::get_if< long long >( &args[ i ] ) )
        d.typeName += std::to_string( *n );
      else
        d.typeName += std::get< std::string >( args[ i ] );
    }
    d.typeName += " >";
    return d;
  }

  //! lowercase hex MD5 digest
  inline std::string md5Hex ( const std::string &text )
  {
    unsigned char digest[ EVP_MAX_MD_SIZE ];
    unsigned int length = 0;
    if( EVP_Digest( text.data(), text.size(), digest, &length, EVP_md5(), nullptr ) != 1 )
      throw NumericError( "md5Hex: digest computation failed" );
    std::string hex;
    char buf[ 3 ];
    for( unsigned int i = 0; i < length; ++i )
    {
      std::snprintf( buf, sizeof( buf ), "%02x", digest[ i ] );
      hex += buf;
    }
    return hex;
  }

  /** \brief deterministic module name for a descriptor
   *
   *  The part of the type name before the first '<', with every run of
   *  other characters than letters and digits replaced by '_', followed by
   *  '_' and the MD5 of the type name and includes (newline separated).
   */
  inline std::string moduleKey ( const TypeDescriptor &d )
  {
    const std::string base = d.typeName.substr( 0, d.typeName.find( '<' ) );
    std::string sanitized;
    for( char c : base )
    {
      if( std::isalnum( static_cast< unsigned char >( c ) ) )
        sanitized += c;
      else if( sanitized.empty() || sanitized.back() != '_' )
        sanitized += '_';
    }
    while( !sanitized.empty() && sanitized.back() == '_' )
      sanitized.pop_back();
    if( sanitized.empty() || std::isdigit( static_cast< unsigned char >( sanitized.front() ) ) )
      sanitized = "_" + sanitized;

    std::string input = d.typeName + "\n";
    for( std::size_t i = 0; i < d.includes.size(); ++i )
      input += ( i > 0 ? "\n" : "" ) + d.includes[ i ];
    return sanitized + "_" + md5Hex( input );
  }

} // namespace gridkit

#endif // GRIDKIT_REGISTRY_TYPENAME_HH

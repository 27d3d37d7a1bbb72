//! `#[derive(Logical)]` and `logic_types!` for the `kanren` crate.
//!
//! See the `kanren::logicgen` module for the shape of the generated code.

use heck::ToSnakeCase;
use proc_macro::TokenStream;
use proc_macro2::TokenStream as TokenStream2;
use quote::{format_ident, quote, ToTokens};
use syn::parse::{Parse, ParseStream};
use syn::spanned::Spanned;
use syn::{
    parse_macro_input, Data, DeriveInput, Fields, GenericArgument, GenericParam, Generics, Ident, PathArguments, Type,
    Visibility,
};

/// Derives the logical counterpart `LogicT` of an algebraic type `T`
/// together with the `Logical`, `Adt` and `Exhaustive` implementations,
/// smart constructors and patterns.
///
/// Options: `#[logic(type_only)]` emits only `LogicT`;
/// `#[logic(instances_only)]` emits everything except `LogicT`.
#[proc_macro_derive(Logical, attributes(logic))]
pub fn derive_logical(input: TokenStream) -> TokenStream {
    let input = parse_macro_input!(input as DeriveInput);
    expand(&input).unwrap_or_else(syn::Error::into_compile_error).into()
}

/// Declares a group of (possibly mutually recursive) algebraic types and
/// derives all of them as if each carried `#[derive(Logical)]`.
#[proc_macro]
pub fn logic_types(input: TokenStream) -> TokenStream {
    let group = parse_macro_input!(input as Group);
    let mut out = TokenStream2::new();
    for mut item in group.items {
        match expand(&item) {
            Ok(tokens) => out.extend(tokens),
            Err(err) => out.extend(err.into_compile_error()),
        }
        item.attrs.retain(|a| !a.path().is_ident("logic"));
        out.extend(item.to_token_stream());
    }
    out.into()
}

struct Group {
    items: Vec<DeriveInput>,
}

impl Parse for Group {
    fn parse(input: ParseStream) -> syn::Result<Self> {
        let mut items = Vec::new();
        while !input.is_empty() {
            items.push(input.parse()?);
        }
        Ok(Group { items })
    }
}

/// Tag-tracking patterns are only generated up to this many constructors.
const MAX_TAGGED: usize = 12;

const ATOMIC_TYPES: &[&str] = &[
    "bool", "char", "i8", "i16", "i32", "i64", "i128", "isize", "u8", "u16", "u32", "u64", "u128", "usize", "String",
    "Symbol",
];

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Full,
    TypeOnly,
    InstancesOnly,
}

#[derive(Clone, Copy)]
enum Wrap {
    Plain,
    Boxed,
    Shared,
}

struct Field {
    name: Option<Ident>,
    logic_name: Option<Ident>,
    vis: Visibility,
    ty: Type,
    inner: Type,
    wrap: Wrap,
}

#[derive(Clone, Copy, PartialEq)]
enum Kind {
    Named,
    Unnamed,
    Unit,
}

struct Ctor {
    name: Ident,
    logic_name: Ident,
    kind: Kind,
    fields: Vec<Field>,
}

struct Model {
    vis: Visibility,
    name: Ident,
    logic_name: Ident,
    generics: Generics,
    is_struct: bool,
    ctors: Vec<Ctor>,
}

fn mode(input: &DeriveInput) -> syn::Result<Mode> {
    let mut mode = Mode::Full;
    for attr in input.attrs.iter().filter(|a| a.path().is_ident("logic")) {
        attr.parse_nested_meta(|meta| {
            let requested = if meta.path.is_ident("type_only") {
                Mode::TypeOnly
            } else if meta.path.is_ident("instances_only") {
                Mode::InstancesOnly
            } else {
                return Err(meta.error("unknown `logic` option; expected `type_only` or `instances_only`"));
            };
            if mode != Mode::Full && mode != requested {
                return Err(meta.error("`type_only` and `instances_only` are mutually exclusive"));
            }
            mode = requested;
            Ok(())
        })?;
    }
    Ok(mode)
}

fn expand(input: &DeriveInput) -> syn::Result<TokenStream2> {
    let mode = mode(input)?;
    let model = model(input)?;
    let mut out = TokenStream2::new();
    if mode != Mode::InstancesOnly {
        out.extend(logic_type(&model));
    }
    if mode != Mode::TypeOnly {
        out.extend(instances(&model));
    }
    Ok(out)
}

fn model(input: &DeriveInput) -> syn::Result<Model> {
    for param in &input.generics.params {
        match param {
            GenericParam::Type(_) => {}
            GenericParam::Lifetime(l) => {
                return Err(syn::Error::new(
                    l.span(),
                    "`#[derive(Logical)]` does not support lifetime parameters: logical values must be `'static`",
                ))
            }
            GenericParam::Const(c) => {
                return Err(syn::Error::new(
                    c.span(),
                    "`#[derive(Logical)]` does not support const parameters",
                ))
            }
        }
    }
    let name = input.ident.clone();
    let logic_name = format_ident!("Logic{}", name);
    let (is_struct, ctors) = match &input.data {
        Data::Struct(data) => (true, vec![ctor(&name, logic_name.clone(), &data.fields)?]),
        Data::Enum(data) => {
            let ctors = data
                .variants
                .iter()
                .map(|v| ctor(&v.ident, format_ident!("Logic{}", v.ident), &v.fields))
                .collect::<syn::Result<_>>()?;
            (false, ctors)
        }
        Data::Union(u) => {
            return Err(syn::Error::new(
                u.union_token.span(),
                "`#[derive(Logical)]` does not support unions",
            ))
        }
    };
    let mut generics = input.generics.clone();
    for param in generics.type_params_mut() {
        param.bounds.push(syn::parse_quote!(::kanren::Logical));
    }
    Ok(Model {
        vis: input.vis.clone(),
        name,
        logic_name,
        generics,
        is_struct,
        ctors,
    })
}

fn ctor(name: &Ident, logic_name: Ident, fields: &Fields) -> syn::Result<Ctor> {
    let kind = match fields {
        Fields::Named(_) => Kind::Named,
        Fields::Unnamed(_) => Kind::Unnamed,
        Fields::Unit => Kind::Unit,
    };
    let fields = fields
        .iter()
        .map(|f| {
            check_type(&f.ty)?;
            let (inner, wrap) = unwrap_pointer(&f.ty);
            Ok(Field {
                name: f.ident.clone(),
                logic_name: f.ident.as_ref().map(|i| format_ident!("logic_{}", i)),
                vis: f.vis.clone(),
                ty: f.ty.clone(),
                inner,
                wrap,
            })
        })
        .collect::<syn::Result<_>>()?;
    Ok(Ctor {
        name: name.clone(),
        logic_name,
        kind,
        fields,
    })
}

fn last_segment(ty: &Type) -> Option<&syn::PathSegment> {
    match ty {
        Type::Path(p) if p.qself.is_none() => p.path.segments.last(),
        _ => None,
    }
}

/// `Box<T>` and `Arc<T>` fields are stored as `Term<T>`.
fn unwrap_pointer(ty: &Type) -> (Type, Wrap) {
    if let Some(seg) = last_segment(ty) {
        let wrap = match seg.ident.to_string().as_str() {
            "Box" => Wrap::Boxed,
            "Arc" => Wrap::Shared,
            _ => return (ty.clone(), Wrap::Plain),
        };
        if let PathArguments::AngleBracketed(args) = &seg.arguments {
            if let [GenericArgument::Type(inner)] = args.args.iter().collect::<Vec<_>>().as_slice() {
                return ((*inner).clone(), wrap);
            }
        }
    }
    (ty.clone(), Wrap::Plain)
}

fn unsupported(ty: &Type, what: &str) -> syn::Error {
    syn::Error::new(
        ty.span(),
        format!("`#[derive(Logical)]` does not support {what} as field types"),
    )
}

fn check_type(ty: &Type) -> syn::Result<()> {
    match ty {
        Type::Path(p) => {
            if let Some(q) = &p.qself {
                check_type(&q.ty)?;
            }
            for seg in &p.path.segments {
                match &seg.arguments {
                    PathArguments::None => {}
                    PathArguments::AngleBracketed(args) => {
                        for arg in &args.args {
                            match arg {
                                GenericArgument::Type(t) => check_type(t)?,
                                GenericArgument::Lifetime(l) => {
                                    return Err(syn::Error::new(
                                        l.span(),
                                        "`#[derive(Logical)]` does not support borrowed data in fields",
                                    ))
                                }
                                _ => {}
                            }
                        }
                    }
                    PathArguments::Parenthesized(_) => return Err(unsupported(ty, "closure traits")),
                }
            }
            Ok(())
        }
        Type::Paren(p) => check_type(&p.elem),
        Type::Group(g) => check_type(&g.elem),
        Type::Tuple(t) if t.elems.len() > 4 => Err(unsupported(ty, "tuples with more than 4 elements")),
        Type::Tuple(t) => t.elems.iter().try_for_each(check_type),
        Type::Reference(_) => Err(unsupported(ty, "references")),
        Type::Ptr(_) => Err(unsupported(ty, "raw pointers")),
        Type::TraitObject(_) => Err(unsupported(ty, "trait objects")),
        Type::ImplTrait(_) => Err(unsupported(ty, "`impl Trait` types")),
        Type::BareFn(_) => Err(unsupported(ty, "function types")),
        Type::Array(_) | Type::Slice(_) => Err(unsupported(ty, "arrays and slices")),
        Type::Never(_) => Err(unsupported(ty, "the never type")),
        _ => Err(unsupported(ty, "this kind of type")),
    }
}

fn is_atomic(ty: &Type) -> bool {
    match ty {
        Type::Tuple(t) => t.elems.is_empty(),
        _ => last_segment(ty)
            .is_some_and(|s| s.arguments.is_none() && ATOMIC_TYPES.contains(&s.ident.to_string().as_str())),
    }
}

fn snake(name: &Ident) -> Ident {
    let s = name.to_string().to_snake_case();
    if syn::parse_str::<Ident>(&s).is_ok() {
        Ident::new(&s, name.span())
    } else {
        Ident::new_raw(&s, name.span())
    }
}

fn binders(prefix: &str, n: usize) -> Vec<Ident> {
    (0..n).map(|i| format_ident!("{}{}", prefix, i)).collect()
}

/// Builds a constructor expression or pattern from per-field tokens.
fn shape(path: TokenStream2, kind: Kind, names: &[Option<Ident>], parts: &[TokenStream2]) -> TokenStream2 {
    match kind {
        Kind::Unit => path,
        Kind::Unnamed => quote!(#path(#(#parts),*)),
        Kind::Named => {
            let names = names.iter().map(|n| n.as_ref().unwrap());
            quote!(#path { #(#names: #parts),* })
        }
    }
}

impl Model {
    fn logic_path(&self, ctor: &Ctor) -> TokenStream2 {
        let logic = &self.logic_name;
        let variant = &ctor.logic_name;
        if self.is_struct {
            quote!(#logic)
        } else {
            quote!(#logic::#variant)
        }
    }

    fn plain_path(&self, ctor: &Ctor) -> TokenStream2 {
        let name = &self.name;
        let variant = &ctor.name;
        if self.is_struct {
            quote!(#name)
        } else {
            quote!(#name::#variant)
        }
    }

    /// Destructures a logical value of `ctor`, binding its fields to `binders`.
    fn logic_pattern(&self, ctor: &Ctor, binders: &[Ident]) -> TokenStream2 {
        let names: Vec<_> = ctor.fields.iter().map(|f| f.logic_name.clone()).collect();
        let parts: Vec<_> = binders.iter().map(|b| quote!(#b)).collect();
        shape(self.logic_path(ctor), ctor.kind, &names, &parts)
    }

    fn logic_expr(&self, ctor: &Ctor, parts: &[TokenStream2]) -> TokenStream2 {
        let names: Vec<_> = ctor.fields.iter().map(|f| f.logic_name.clone()).collect();
        shape(self.logic_path(ctor), ctor.kind, &names, parts)
    }

    fn plain_shape(&self, ctor: &Ctor, parts: &[TokenStream2]) -> TokenStream2 {
        let names: Vec<_> = ctor.fields.iter().map(|f| f.name.clone()).collect();
        shape(self.plain_path(ctor), ctor.kind, &names, parts)
    }

    fn marker(&self, ctor: &Ctor) -> Ident {
        if self.is_struct {
            format_ident!("{}Tag", self.logic_name)
        } else {
            format_ident!("{}{}Tag", self.logic_name, ctor.name)
        }
    }
}

fn term_of(ty: &Type) -> TokenStream2 {
    quote!(::kanren::Term<#ty>)
}

fn logic_type(model: &Model) -> TokenStream2 {
    let vis = &model.vis;
    let logic = &model.logic_name;
    let name = &model.name;
    let (_, _, where_clause) = model.generics.split_for_impl();
    let params = &model.generics.params;
    let doc = format!("Logical counterpart of [`{name}`]: every field may be an unbound variable.");
    let body_fields = |ctor: &Ctor| -> TokenStream2 {
        let fields = ctor.fields.iter().map(|f| {
            let ty = term_of(&f.inner);
            match &f.logic_name {
                Some(n) => {
                    let fvis = &f.vis;
                    quote!(#fvis #n: #ty)
                }
                None if model.is_struct => {
                    let fvis = &f.vis;
                    quote!(#fvis #ty)
                }
                None => ty,
            }
        });
        match ctor.kind {
            Kind::Unit => quote!(),
            Kind::Unnamed => quote!((#(#fields),*)),
            Kind::Named => quote!({ #(#fields),* }),
        }
    };
    if model.is_struct {
        let ctor = &model.ctors[0];
        let body = body_fields(ctor);
        let semi = if ctor.kind == Kind::Named { quote!() } else { quote!(;) };
        quote! {
            #[doc = #doc]
            #[derive(Clone, Debug, PartialEq)]
            #vis struct #logic<#params> #where_clause #body #semi
        }
    } else {
        let variants = model.ctors.iter().map(|c| {
            let n = &c.logic_name;
            let body = body_fields(c);
            quote!(#n #body)
        });
        quote! {
            #[doc = #doc]
            #[derive(Clone, Debug, PartialEq)]
            #[allow(clippy::enum_variant_names)]
            #vis enum #logic<#params> #where_clause { #(#variants),* }
        }
    }
}

fn instances(model: &Model) -> TokenStream2 {
    let name = &model.name;
    let logic = &model.logic_name;
    let vis = &model.vis;
    let (impl_generics, ty_generics, where_clause) = model.generics.split_for_impl();
    let empty = model.ctors.is_empty();

    let unify_arms = model.ctors.iter().map(|c| {
        let l = binders("__l", c.fields.len());
        let r = binders("__r", c.fields.len());
        let lp = model.logic_pattern(c, &l);
        let rp = model.logic_pattern(c, &r);
        quote! {
            (#lp, #rp) => {
                let state = ::core::option::Option::Some(state);
                #(let state = ::kanren::unify_terms(#l, #r, state?);)*
                state
            }
        }
    });
    let unify_body = if empty {
        quote!(match *left {})
    } else {
        let fallback = if model.ctors.len() > 1 {
            quote!(_ => ::core::option::Option::None,)
        } else {
            quote!()
        };
        quote! {
            match (left, right) {
                #(#unify_arms)*
                #fallback
            }
        }
    };

    let walk_arms = model.ctors.iter().map(|c| {
        let b = binders("__f", c.fields.len());
        let pat = model.logic_pattern(c, &b);
        let parts: Vec<_> = b.iter().map(|x| quote!(#x.walk(state))).collect();
        let expr = model.logic_expr(c, &parts);
        quote!(#pat => #expr,)
    });

    let occurs_arms = model.ctors.iter().map(|c| {
        let b = binders("__f", c.fields.len());
        let pat = model.logic_pattern(c, &b);
        quote!(#pat => false #(|| #b.occurs_check(var, state))*,)
    });

    let inject_arms = model.ctors.iter().map(|c| {
        let b = binders("__f", c.fields.len());
        let bparts: Vec<_> = b.iter().map(|x| quote!(#x)).collect();
        let pat = model.plain_shape(c, &bparts);
        let parts: Vec<_> = c
            .fields
            .iter()
            .zip(&b)
            .map(|(f, x)| match f.wrap {
                Wrap::Plain => quote!(::kanren::Term::inject(#x)),
                Wrap::Boxed => quote!(::kanren::Term::inject(*#x)),
                Wrap::Shared => quote!(::kanren::Term::inject(::std::sync::Arc::unwrap_or_clone(#x))),
            })
            .collect();
        let expr = model.logic_expr(c, &parts);
        quote!(#pat => #expr,)
    });

    let extract_arms = model.ctors.iter().map(|c| {
        let b = binders("__f", c.fields.len());
        let pat = model.logic_pattern(c, &b);
        let parts: Vec<_> = c
            .fields
            .iter()
            .zip(&b)
            .map(|(f, x)| match f.wrap {
                Wrap::Plain => quote!(#x.extract()?),
                Wrap::Boxed => quote!(::std::boxed::Box::new(#x.extract()?)),
                Wrap::Shared => quote!(::std::sync::Arc::new(#x.extract()?)),
            })
            .collect();
        let expr = model.plain_shape(c, &parts);
        quote!(#pat => ::core::option::Option::Some(#expr),)
    });

    let value_match = |arms: Vec<TokenStream2>| {
        if empty {
            quote!(match *value {})
        } else {
            quote!(match value { #(#arms)* })
        }
    };
    let walk_body = value_match(walk_arms.collect());
    let occurs_body = value_match(occurs_arms.collect());
    let extract_body = value_match(extract_arms.collect());
    let inject_body = if empty {
        quote!(match self {})
    } else {
        quote!(match self { #(#inject_arms)* })
    };

    let index_arms = model.ctors.iter().enumerate().map(|(i, c)| {
        let path = model.logic_path(c);
        quote!(#path { .. } => #i,)
    });
    let index_body = value_match(index_arms.collect());

    let descriptor = descriptor(model);

    let markers: Vec<_> = model.ctors.iter().map(|c| model.marker(c)).collect();
    let tagged = model.ctors.len() <= MAX_TAGGED;
    let exhaustive = if tagged {
        quote! {
            impl #impl_generics ::kanren::Exhaustive for #name #ty_generics #where_clause {
                type Tags = (#(::kanren::Remaining<#markers>,)*);
            }
        }
    } else {
        quote!()
    };
    let marker_decls = if tagged {
        let decls = model.ctors.iter().zip(&markers).map(|(c, m)| {
            let doc = format!("Type-level tag of the `{}` constructor of [`{}`].", c.name, name);
            quote! {
                #[doc = #doc]
                #vis struct #m;
            }
        });
        quote!(#(#decls)*)
    } else {
        quote!()
    };

    let ty = quote!(#name #ty_generics);
    let n = model.ctors.len();
    let per_ctor = model.ctors.iter().enumerate().map(|(i, c)| {
        let snake = snake(&c.name);
        let pat_fn = format_ident!("pat_{}", snake.to_string().trim_start_matches("r#"));
        let tagged_fn = format_ident!("tagged_{}", snake.to_string().trim_start_matches("r#"));
        let cname = c.name.to_string();
        let b = binders("__f", c.fields.len());
        let term_tys: Vec<_> = c.fields.iter().map(|f| term_of(&f.inner)).collect();
        let bparts: Vec<_> = b.iter().map(|x| quote!(#x)).collect();
        let value = model.logic_expr(c, &bparts);
        let (binding_ty, binding_pat, binding_expr) = match c.fields.len() {
            0 => (quote!(()), quote!(()), quote!(())),
            1 => {
                let t = &term_tys[0];
                let x = &b[0];
                (quote!(#t), quote!(#x), quote!(::core::clone::Clone::clone(#x)))
            }
            _ => (
                quote!((#(#term_tys,)*)),
                quote!((#(#b,)*)),
                quote!((#(::core::clone::Clone::clone(#b),)*)),
            ),
        };
        let pat = model.logic_pattern(c, &b);
        let fallback = if n > 1 {
            quote!(#[allow(unreachable_patterns)] _ => ::core::option::Option::None,)
        } else {
            quote!()
        };
        let doc_ctor = format!("Builds `{cname}` from terms for its fields.");
        let doc_pat = format!("Pattern for the `{cname}` constructor.");
        let tagged_item = if tagged {
            let marker = &markers[i];
            let vars: Vec<_> = (0..n).filter(|j| *j != i).map(|j| format_ident!("__S{}", j)).collect();
            let before = (0..n).map(|j| {
                if j == i {
                    quote!(::kanren::Remaining<#marker>)
                } else {
                    let v = format_ident!("__S{}", j);
                    quote!(#v)
                }
            });
            let after = (0..n).map(|j| {
                if j == i {
                    quote!(::kanren::Checked)
                } else {
                    let v = format_ident!("__S{}", j);
                    quote!(#v)
                }
            });
            let doc = format!("Pattern for `{cname}` that marks the constructor as matched.");
            quote! {
                #[doc = #doc]
                #vis fn #tagged_fn<#(#vars),*>() -> ::kanren::TaggedPattern<#ty, #binding_ty, (#(#before,)*), (#(#after,)*)> {
                    ::kanren::TaggedPattern::from_pattern(Self::#pat_fn())
                }
            }
        } else {
            quote!()
        };
        quote! {
            #[doc = #doc_ctor]
            #vis fn #snake(#(#b: #term_tys),*) -> ::kanren::Term<#ty> {
                ::kanren::Term::value(#value)
            }

            #[doc = #doc_pat]
            #vis fn #pat_fn() -> ::kanren::Pattern<#ty, #binding_ty> {
                ::kanren::Pattern::new(
                    ::kanren::Tag { index: #i, name: #cname },
                    |value| match value {
                        #pat => ::core::option::Option::Some(#binding_expr),
                        #fallback
                    },
                    |#binding_pat| #value,
                )
            }

            #tagged_item
        }
    });

    quote! {
        #marker_decls

        impl #impl_generics ::kanren::Logical for #name #ty_generics #where_clause {
            type Logic = #logic #ty_generics;

            fn unify(left: &Self::Logic, right: &Self::Logic, state: ::kanren::State) -> ::core::option::Option<::kanren::State> {
                #unify_body
            }

            fn walk(state: &::kanren::State, value: &Self::Logic) -> Self::Logic {
                #walk_body
            }

            fn occurs_check(var: ::kanren::ErasedVar, value: &Self::Logic, state: &::kanren::State) -> bool {
                #occurs_body
            }

            fn inject(self) -> Self::Logic {
                #inject_body
            }

            fn extract(value: &Self::Logic) -> ::core::option::Option<Self> {
                #extract_body
            }
        }

        impl #impl_generics ::kanren::Adt for #name #ty_generics #where_clause {
            const DESCRIPTOR: ::kanren::TypeDescriptor = #descriptor;

            fn constructor_index(value: &Self::Logic) -> usize {
                #index_body
            }
        }

        #exhaustive

        impl #impl_generics #logic #ty_generics #where_clause {
            #(#per_ctor)*
        }
    }
}

fn descriptor(model: &Model) -> TokenStream2 {
    let name = model.name.to_string();
    let logic = model.logic_name.to_string();
    let params: Vec<_> = model.generics.type_params().map(|p| p.ident.to_string()).collect();
    let ctors = model.ctors.iter().map(|c| {
        let cname = c.name.to_string();
        let clogic = c.logic_name.to_string();
        let fields = c.fields.iter().map(|f| {
            let fname = opt_str(f.name.as_ref());
            let flogic = opt_str(f.logic_name.as_ref());
            let ty = f.ty.to_token_stream().to_string().replace(' ', "");
            let shape = if is_atomic(&f.inner) {
                quote!(::kanren::FieldShape::Atomic)
            } else {
                quote!(::kanren::FieldShape::Term)
            };
            quote! {
                ::kanren::FieldDescriptor { name: #fname, logic_name: #flogic, ty: #ty, shape: #shape }
            }
        });
        quote! {
            ::kanren::ConstructorDescriptor { name: #cname, logic_name: #clogic, fields: &[#(#fields),*] }
        }
    });
    quote! {
        ::kanren::TypeDescriptor {
            name: #name,
            logic_name: #logic,
            params: &[#(#params),*],
            constructors: &[#(#ctors),*],
        }
    }
}

fn opt_str(ident: Option<&Ident>) -> TokenStream2 {
    match ident {
        Some(i) => {
            let s = i.to_string();
            quote!(::core::option::Option::Some(#s))
        }
        None => quote!(::core::option::Option::None),
    }
}

//! Runtime side of `#[derive(Logical)]`: shape descriptors and the
//! constructor-tag protocol generated for every derived type.
//!
//! The derive turns a plain algebraic type `Foo` into its maximal logical
//! counterpart `LogicFoo`: every constructor `C` becomes `LogicC`, every
//! field of type `T` becomes a `Term<T>` (boxes are looked through), and
//! named fields `bar` become `logic_bar`. The five [`Logical`] operations
//! are generated by structural recursion over constructors and fields:
//! different constructors never unify, equal constructors unify field by
//! field threading the state, and fieldless constructors unify without
//! touching the state.
//!
//! For each constructor the derive also emits
//!
//! * a smart constructor `LogicFoo::c(..) -> Term<Foo>`,
//! * a first-class pattern `LogicFoo::pat_c()` for [`crate::matching`],
//! * a tag-tracking pattern `LogicFoo::tagged_c()` plus a marker type
//!   `LogicFooCTag` for exhaustive matching.
//!
//! `#[logic(type_only)]` emits just the logical type and
//! `#[logic(instances_only)]` just the implementations (for a hand-written
//! `LogicFoo` of the conventional shape). Mutually recursive groups need no
//! special treatment, but [`crate::logic_types!`] derives a whole group of
//! declarations in one go.

use crate::term::Logical;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldShape {
    /// Field of an atomic base type: its term's values unify by equality.
    Atomic,
    /// Field of an algebraic type, unified structurally.
    Term,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    pub name: Option<&'static str>,
    pub logic_name: Option<&'static str>,
    pub ty: &'static str,
    pub shape: FieldShape,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructorDescriptor {
    pub name: &'static str,
    pub logic_name: &'static str,
    pub fields: &'static [FieldDescriptor],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeDescriptor {
    pub name: &'static str,
    pub logic_name: &'static str,
    pub params: &'static [&'static str],
    pub constructors: &'static [ConstructorDescriptor],
}

impl TypeDescriptor {
    pub fn constructor_names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.constructors.iter().map(|c| c.name)
    }

    pub fn constructor(&self, name: &str) -> Option<&ConstructorDescriptor> {
        self.constructors.iter().find(|c| c.name == name)
    }
}

/// Algebraic logical types: knows its constructors and which one a logical
/// value was built with.
pub trait Adt: Logical {
    const DESCRIPTOR: TypeDescriptor;

    /// Position of the outermost constructor of `value` in
    /// `DESCRIPTOR.constructors`.
    fn constructor_index(value: &Self::Logic) -> usize;

    fn constructor_name(value: &Self::Logic) -> &'static str {
        Self::DESCRIPTOR.constructors[Self::constructor_index(value)].name
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdlib::tree::Tree;

    #[test]
    fn tree_descriptor() {
        let d = <Tree<i64> as Adt>::DESCRIPTOR;
        assert_eq!(d.name, "Tree");
        assert_eq!(d.logic_name, "LogicTree");
        assert_eq!(d.params, &["A"]);
        let names: Vec<_> = d.constructor_names().collect();
        assert_eq!(names, ["Empty", "Leaf", "Node"]);
        let node = d.constructor("Node").unwrap();
        assert_eq!(node.logic_name, "LogicNode");
        assert_eq!(node.fields.len(), 2);
        assert_eq!(node.fields[0].shape, FieldShape::Term);
        assert_eq!(d.constructor("Leaf").unwrap().fields[0].ty, "A");
    }
}

"""The 24-type adaptation taxonomy and its 6 intent categories."""

from __future__ import annotations

from enum import Enum


class Category(Enum):
    CODE_HARDENING = "CodeHardening"
    RESOLVE_COMPILATION_ERRORS = "ResolveCompilationErrors"
    EXCEPTION_HANDLING = "ExceptionHandling"
    LOGIC_CUSTOMIZATION = "LogicCustomization"
    REFACTORING = "Refactoring"
    MISCELLANEOUS = "Miscellaneous"


# Fixed qualitative palette (ColorBrewer Set2), one distinct color per category.
CATEGORY_COLORS: dict[Category, str] = {
    Category.CODE_HARDENING: "#66c2a5",
    Category.RESOLVE_COMPILATION_ERRORS: "#fc8d62",
    Category.EXCEPTION_HANDLING: "#8da0cb",
    Category.LOGIC_CUSTOMIZATION: "#e78ac8",
    Category.REFACTORING: "#a6d854",
    Category.MISCELLANEOUS: "#ffd92f",
}


class AdaptationType(Enum):
    ADD_CONDITIONAL = "AddConditional"
    INSERT_FINAL_MODIFIER = "InsertFinalModifier"
    HANDLE_NEW_EXCEPTION_TYPE = "HandleNewExceptionType"
    CLEAN_UP_RESOURCES = "CleanUpResources"
    DECLARE_UNDECLARED_VARIABLE = "DeclareUndeclaredVariable"
    SPECIFY_INVOCATION_TARGET = "SpecifyInvocationTarget"
    REMOVE_UNDECLARED = "RemoveUndeclared"
    INSERT_DELETE_TRY_CATCH = "InsertDeleteTryCatch"
    INSERT_DELETE_THROWN = "InsertDeleteThrown"
    UPDATE_EXCEPTION_TYPE = "UpdateExceptionType"
    CHANGE_CATCH_BLOCK = "ChangeCatchBlock"
    CHANGE_FINALLY_BLOCK = "ChangeFinallyBlock"
    CHANGE_METHOD_CALL = "ChangeMethodCall"
    UPDATE_CONSTANT = "UpdateConstant"
    CHANGE_CONDITIONAL_EXPR = "ChangeConditionalExpr"
    CHANGE_VARIABLE_TYPE = "ChangeVariableType"
    RENAME = "Rename"
    REPLACE_CONSTANT_WITH_VARIABLE = "ReplaceConstantWithVariable"
    INLINE_FIELD = "InlineField"
    CHANGE_ACCESS_MODIFIER = "ChangeAccessModifier"
    CHANGE_LOG_STATEMENT = "ChangeLogStatement"
    STYLE_REFORMAT = "StyleReformat"
    CHANGE_ANNOTATION = "ChangeAnnotation"
    CHANGE_COMMENT = "ChangeComment"


# Table order: rule evaluation and reporting follow this sequence.
TABLE_ORDER: tuple[AdaptationType, ...] = (
    AdaptationType.ADD_CONDITIONAL,
    AdaptationType.INSERT_FINAL_MODIFIER,
    AdaptationType.HANDLE_NEW_EXCEPTION_TYPE,
    AdaptationType.CLEAN_UP_RESOURCES,
    AdaptationType.DECLARE_UNDECLARED_VARIABLE,
    AdaptationType.SPECIFY_INVOCATION_TARGET,
    AdaptationType.REMOVE_UNDECLARED,
    AdaptationType.INSERT_DELETE_TRY_CATCH,
    AdaptationType.INSERT_DELETE_THROWN,
    AdaptationType.UPDATE_EXCEPTION_TYPE,
    AdaptationType.CHANGE_CATCH_BLOCK,
    AdaptationType.CHANGE_FINALLY_BLOCK,
    AdaptationType.CHANGE_METHOD_CALL,
    AdaptationType.UPDATE_CONSTANT,
    AdaptationType.CHANGE_CONDITIONAL_EXPR,
    AdaptationType.CHANGE_VARIABLE_TYPE,
    AdaptationType.RENAME,
    AdaptationType.REPLACE_CONSTANT_WITH_VARIABLE,
    AdaptationType.INLINE_FIELD,
    AdaptationType.CHANGE_ACCESS_MODIFIER,
    AdaptationType.CHANGE_LOG_STATEMENT,
    AdaptationType.STYLE_REFORMAT,
    AdaptationType.CHANGE_ANNOTATION,
    AdaptationType.CHANGE_COMMENT,
)

TYPE_TO_CATEGORY: dict[AdaptationType, Category] = {
    AdaptationType.ADD_CONDITIONAL: Category.CODE_HARDENING,
    AdaptationType.INSERT_FINAL_MODIFIER: Category.CODE_HARDENING,
    AdaptationType.HANDLE_NEW_EXCEPTION_TYPE: Category.CODE_HARDENING,
    AdaptationType.CLEAN_UP_RESOURCES: Category.CODE_HARDENING,
    AdaptationType.DECLARE_UNDECLARED_VARIABLE: Category.RESOLVE_COMPILATION_ERRORS,
    AdaptationType.SPECIFY_INVOCATION_TARGET: Category.RESOLVE_COMPILATION_ERRORS,
    AdaptationType.REMOVE_UNDECLARED: Category.RESOLVE_COMPILATION_ERRORS,
    AdaptationType.INSERT_DELETE_TRY_CATCH: Category.EXCEPTION_HANDLING,
    AdaptationType.INSERT_DELETE_THROWN: Category.EXCEPTION_HANDLING,
    AdaptationType.UPDATE_EXCEPTION_TYPE: Category.EXCEPTION_HANDLING,
    AdaptationType.CHANGE_CATCH_BLOCK: Category.EXCEPTION_HANDLING,
    AdaptationType.CHANGE_FINALLY_BLOCK: Category.EXCEPTION_HANDLING,
    AdaptationType.CHANGE_METHOD_CALL: Category.LOGIC_CUSTOMIZATION,
    AdaptationType.UPDATE_CONSTANT: Category.LOGIC_CUSTOMIZATION,
    AdaptationType.CHANGE_CONDITIONAL_EXPR: Category.LOGIC_CUSTOMIZATION,
    AdaptationType.CHANGE_VARIABLE_TYPE: Category.LOGIC_CUSTOMIZATION,
    AdaptationType.RENAME: Category.REFACTORING,
    AdaptationType.REPLACE_CONSTANT_WITH_VARIABLE: Category.REFACTORING,
    AdaptationType.INLINE_FIELD: Category.REFACTORING,
    AdaptationType.CHANGE_ACCESS_MODIFIER: Category.MISCELLANEOUS,
    AdaptationType.CHANGE_LOG_STATEMENT: Category.MISCELLANEOUS,
    AdaptationType.STYLE_REFORMAT: Category.MISCELLANEOUS,
    AdaptationType.CHANGE_ANNOTATION: Category.MISCELLANEOUS,
    AdaptationType.CHANGE_COMMENT: Category.MISCELLANEOUS,
}

ACCESS_MODIFIER_VALUES = frozenset({"private", "public", "protected", "static"})

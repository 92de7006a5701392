//! Command implementations: dispatch to the library verifiers and
//! converters, assemble deterministic reports, and write output documents.

use crate::{ConvertKind, RunConfig, VerifyKind};
use orbiteq::action::{FreenessStatus, MonoidAction};
use orbiteq::doc::{self, Document, Registry};
use orbiteq::equivalence as eq;
use orbiteq::groupoid;
use orbiteq::report::{Check, CheckStatus, Report};
use orbiteq::{Error, Result};
use std::path::Path;

const SAMPLE_SEED: u64 = 20260810;

fn config_value(config: RunConfig) -> serde_json::Value {
    serde_json::json!({
        "depth": config.depth,
        "degree_bound": config.degree_bound,
        "period_bound": config.period_bound,
    })
}

fn status_str(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Verified => "verified",
        CheckStatus::Refuted => "refuted",
        CheckStatus::Undetermined => "undetermined",
    }
}

fn write_and_print(
    kind: &str,
    config: RunConfig,
    targets: Vec<(String, Report)>,
    out: Option<&Path>,
) -> Result<CheckStatus> {
    let mut aggregate = CheckStatus::Verified;
    for (target, report) in &targets {
        for check in &report.checks {
            let witness = check
                .witness
                .as_deref()
                .map(|w| format!(" [{w}]"))
                .unwrap_or_default();
            let info = if check.informational { " (informational)" } else { "" };
            println!(
                "{:>12}  {target}  {}{witness}{info}",
                status_str(check.status),
                check.name
            );
        }
        match (aggregate, report.status()) {
            (_, CheckStatus::Refuted) => aggregate = CheckStatus::Refuted,
            (CheckStatus::Verified, CheckStatus::Undetermined) => {
                aggregate = CheckStatus::Undetermined
            }
            _ => {}
        }
    }
    println!("overall: {}", status_str(aggregate));

    if let Some(path) = out {
        let payload = serde_json::json!({
            "kind": kind,
            "status": status_str(aggregate),
            "config": config_value(config),
            "targets": targets
                .iter()
                .map(|(name, report)| {
                    serde_json::json!({
                        "name": name,
                        "status": status_str(report.status()),
                        "checks": report.checks,
                    })
                })
                .collect::<Vec<_>>(),
        });
        let doc = serde_json::json!({ "schema": "report/v1", "payload": payload });
        std::fs::write(path, format!("{:#}\n", doc))?;
    }
    Ok(aggregate)
}

fn local_homeo_checks(prefix: &str, idx: usize, report: &orbiteq::progressive::LocalHomeoReport, space: &orbiteq::Sft) -> Vec<Check> {
    let mut out = Vec::new();
    let name = format!("{prefix}[{idx}].injective");
    if report.injective {
        out.push(Check::verified(name));
    } else {
        let f = &report.injectivity_failures[0];
        out.push(Check::refuted(
            name,
            format!(
                "cylinder '{}': '{}' and '{}' collide at depth {}",
                space.format_word(&f.cylinder),
                space.format_word(&f.left),
                space.format_word(&f.right),
                report.depth
            ),
        ));
    }
    let name = format!("{prefix}[{idx}].surjective");
    if report.surjective {
        out.push(Check::verified(name));
    } else {
        out.push(Check::refuted(
            name,
            format!(
                "missing word '{}' at depth {}",
                space.format_word(&report.missing_words[0]),
                report.depth
            ),
        ));
    }
    out
}

fn action_axiom_report(act: &MonoidAction, config: RunConfig) -> Result<Report> {
    let space = act.space();
    let axioms = act.verify_action_axioms(config.depth)?;
    let mut report = Report::new("action");
    report.push(Check::from_certificate("identity_is_unit", &axioms.identity, space));
    for (i, j, cert) in &axioms.commutativity {
        report.push(Check::from_certificate(
            format!("generators_commute[{i},{j}]"),
            cert,
            space,
        ));
    }
    for (i, lh) in axioms.local_homeo.iter().enumerate() {
        report.extend(local_homeo_checks("local_homeo", i, lh, space));
    }
    for (i, back, forth) in &axioms.inverse_roundtrips {
        report.push(Check::from_certificate(
            format!("inverse_roundtrip[{i}].left"),
            back,
            space,
        ));
        report.push(Check::from_certificate(
            format!("inverse_roundtrip[{i}].right"),
            forth,
            space,
        ));
    }
    Ok(report)
}

fn freeness_report(act: &MonoidAction, config: RunConfig) -> Result<Report> {
    let space = act.space();
    let free = act.essentially_free(config.degree_bound, config.depth, config.period_bound)?;
    let mut report = Report::new("freeness");
    for cert in &free.certificates {
        let name = format!(
            "equalizer_empty[m={},n={}]{}",
            cert.pair.0,
            cert.pair.1,
            if cert.exact { "" } else { " (at depth)" }
        );
        match &cert.status {
            FreenessStatus::Free { witnesses } => {
                let _ = witnesses;
                report.push(Check::verified(name));
            }
            FreenessStatus::NotFree { cylinder } => {
                report.push(Check::refuted(
                    name,
                    format!(
                        "maps agree on the cylinder '{}'",
                        space.format_word(cylinder)
                    ),
                ));
            }
        }
    }
    Ok(report)
}

fn groupoid_axiom_report(act: &MonoidAction, config: RunConfig) -> Result<Report> {
    let bound = config.degree_bound.min(3);
    let elements = if act.shift_powers().is_some() {
        groupoid::sample_shift_elements(act, 34, 3, bound, config.depth, SAMPLE_SEED)?
    } else if act.by_homeomorphisms() {
        groupoid::sample_group_elements(act, 100, bound as i64, config.depth, SAMPLE_SEED)?
    } else {
        return Err(Error::BadDocument(
            "cannot sample groupoid elements: need a shift action or a homeomorphism action"
                .into(),
        ));
    };
    groupoid::verify_axioms(act, &elements, config.depth)
}

pub fn cmd_verify(
    kind: VerifyKind,
    files: &[std::path::PathBuf],
    config: RunConfig,
    out: Option<&Path>,
) -> Result<CheckStatus> {
    let reg = crate::workspace::load(files)?;
    let mut targets = Vec::new();
    match kind {
        VerifyKind::Action => {
            for name in reg.action_names() {
                let act = reg.action(name)?;
                targets.push((name.clone(), action_axiom_report(act, config)?));
            }
        }
        VerifyKind::Freeness => {
            for name in reg.action_names() {
                let act = reg.action(name)?;
                targets.push((name.clone(), freeness_report(act, config)?));
            }
        }
        VerifyKind::GroupoidAxioms => {
            for name in reg.action_names() {
                let act = reg.action(name)?;
                targets.push((name.clone(), groupoid_axiom_report(act, config)?));
            }
        }
        VerifyKind::Csoe => {
            for name in reg.csoe_names() {
                let b = reg.csoe_bundle(name)?;
                let act_x = reg.action(&b.x_action)?;
                let act_y = reg.action(&b.y_action)?;
                let mut report = eq::verify_csoe(act_x, act_y, &b.data, config.depth)?;
                let identities = eq::check_derived_identities(
                    act_x,
                    act_y,
                    &b.data,
                    config.depth,
                    config.period_bound,
                )?;
                report.extend(identities.checks);
                targets.push((name.clone(), report));
            }
        }
        VerifyKind::Coe => {
            for name in reg.coe_names() {
                let b = reg.coe_bundle(name)?;
                let act_x = reg.action(&b.x_action)?;
                let act_y = reg.action(&b.y_action)?;
                targets.push((
                    name.clone(),
                    eq::verify_coe(act_x, act_y, &b.data, config.depth, config.period_bound)?,
                ));
            }
        }
        VerifyKind::ShiftCoe => {
            for name in reg.shift_coe_names() {
                let b = reg.shift_coe_bundle(name)?;
                let act_x = reg.action(&b.x_action)?;
                let act_y = reg.action(&b.y_action)?;
                targets.push((
                    name.clone(),
                    eq::verify_shift_coe(act_x, act_y, &b.data, config.depth)?,
                ));
            }
        }
    }
    if targets.is_empty() {
        return Err(Error::BadDocument(
            "no document of the requested kind was loaded".into(),
        ));
    }
    let kind_str = match kind {
        VerifyKind::Action => "action",
        VerifyKind::Csoe => "csoe",
        VerifyKind::Coe => "coe",
        VerifyKind::ShiftCoe => "shift_coe",
        VerifyKind::Freeness => "freeness",
        VerifyKind::GroupoidAxioms => "groupoid_axioms",
    };
    write_and_print(kind_str, config, targets, out)
}

struct Conversion {
    source_name: String,
    pre: Option<Report>,
    post: Report,
    output: Document,
}

pub fn cmd_convert(
    kind: ConvertKind,
    files: &[std::path::PathBuf],
    config: RunConfig,
    out: Option<&Path>,
    no_preverify: bool,
) -> Result<CheckStatus> {
    let reg = crate::workspace::load(files)?;
    let conv = run_conversion(kind, &reg, config, no_preverify)?;

    let mut targets = Vec::new();
    if let Some(pre) = &conv.pre {
        targets.push((format!("{}(source)", conv.source_name), pre.clone()));
    }
    targets.push((format!("{}(target)", conv.source_name), conv.post.clone()));

    if let Some(pre) = &conv.pre {
        if pre.status() == CheckStatus::Refuted {
            let status = write_and_print(kind_str(kind), config, targets, None)?;
            return Ok(status);
        }
    }

    let verification = serde_json::json!({
        "kind": conv.post.kind,
        "status": status_str(conv.post.status()),
        "config": config_value(config),
        "checks": conv.post.checks,
    });
    let mut value = conv.output.to_value();
    value["verification"] = verification;
    let text = format!("{:#}\n", value);
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    write_and_print(kind_str(kind), config, targets, None)
}

fn kind_str(kind: ConvertKind) -> &'static str {
    match kind {
        ConvertKind::CsoeToCoe => "csoe_to_coe",
        ConvertKind::ShiftToSemigroup => "shift_to_semigroup",
        ConvertKind::SemigroupToShift => "semigroup_to_shift",
        ConvertKind::CoeToGroupoidIso => "coe_to_groupoid_iso",
        ConvertKind::GroupoidIsoToCoe => "groupoid_iso_to_coe",
        ConvertKind::SemigroupToGroup => "semigroup_to_group",
        ConvertKind::GroupToSemigroup => "group_to_semigroup",
    }
}

fn single<'a, I: Iterator<Item = &'a String>>(mut names: I, what: &str) -> Result<String> {
    let first = names
        .next()
        .ok_or_else(|| Error::BadDocument(format!("no {what} document loaded")))?;
    if names.next().is_some() {
        return Err(Error::BadDocument(format!(
            "expected exactly one {what} document"
        )));
    }
    Ok(first.clone())
}

fn run_conversion(
    kind: ConvertKind,
    reg: &Registry,
    config: RunConfig,
    no_preverify: bool,
) -> Result<Conversion> {
    match kind {
        ConvertKind::CsoeToCoe => {
            let name = single(reg.csoe_names(), "csoe")?;
            let b = reg.csoe_bundle(&name)?;
            let act_x = reg.action(&b.x_action)?;
            let act_y = reg.action(&b.y_action)?;
            let pre = if no_preverify {
                None
            } else {
                Some(eq::verify_csoe(act_x, act_y, &b.data, config.depth)?)
            };
            let data = eq::csoe_to_coe(act_x, act_y, &b.data, config.depth, config.period_bound)?;
            let post = eq::verify_coe(act_x, act_y, &data, config.depth, config.period_bound)?;
            let output = Document::Coe(doc::coe_doc_from(
                &format!("{name}-coe"),
                &b.x_action,
                &b.y_action,
                &b.phi,
                &data,
                act_x.space(),
                act_y.space(),
            ));
            Ok(Conversion {
                source_name: name,
                pre,
                post,
                output,
            })
        }
        ConvertKind::ShiftToSemigroup => {
            let name = single(reg.shift_coe_names(), "shift_coe")?;
            let b = reg.shift_coe_bundle(&name)?;
            let act_x = reg.action(&b.x_action)?;
            let act_y = reg.action(&b.y_action)?;
            let pre = if no_preverify {
                None
            } else {
                Some(eq::verify_shift_coe(act_x, act_y, &b.data, config.depth)?)
            };
            let data = eq::shift_coe_to_semigroup(
                act_x,
                act_y,
                &b.data,
                config.degree_bound,
                config.depth,
                config.period_bound,
            )?;
            let post = eq::verify_coe(act_x, act_y, &data, config.depth, config.period_bound)?;
            let output = Document::Coe(doc::coe_doc_from(
                &format!("{name}-coe"),
                &b.x_action,
                &b.y_action,
                &b.phi,
                &data,
                act_x.space(),
                act_y.space(),
            ));
            Ok(Conversion {
                source_name: name,
                pre,
                post,
                output,
            })
        }
        ConvertKind::SemigroupToShift => {
            let name = single(reg.coe_names(), "coe")?;
            let b = reg.coe_bundle(&name)?;
            let act_x = reg.action(&b.x_action)?;
            let act_y = reg.action(&b.y_action)?;
            let pre = if no_preverify {
                None
            } else {
                Some(eq::verify_coe(
                    act_x,
                    act_y,
                    &b.data,
                    config.depth,
                    config.period_bound,
                )?)
            };
            let data = eq::semigroup_to_shift_coe(act_x, act_y, &b.data)?;
            let post = eq::verify_shift_coe(act_x, act_y, &data, config.depth)?;
            let output = Document::ShiftCoe(doc::shift_coe_doc_from(
                &format!("{name}-shift"),
                &b.x_action,
                &b.y_action,
                &b.phi,
                &data,
                act_x.space(),
                act_y.space(),
            ));
            Ok(Conversion {
                source_name: name,
                pre,
                post,
                output,
            })
        }
        ConvertKind::CoeToGroupoidIso => {
            let name = single(reg.coe_names(), "coe")?;
            let b = reg.coe_bundle(&name)?;
            let act_x = reg.action(&b.x_action)?;
            let act_y = reg.action(&b.y_action)?;
            let pre = if no_preverify {
                None
            } else {
                Some(eq::verify_coe(
                    act_x,
                    act_y,
                    &b.data,
                    config.depth,
                    config.period_bound,
                )?)
            };
            let image_depth = b.data.a1.depth_x.max(1);
            let data = eq::build_groupoid_iso(
                act_x,
                act_y,
                &b.data,
                image_depth,
                config.depth,
                config.period_bound,
            )?;
            // Verify the target by running the cover extraction back and
            // checking the resulting relation data.
            let back = eq::coe_from_groupoid_iso(
                act_x,
                act_y,
                &data,
                b.data.degree_bound,
                config.depth,
                config.period_bound,
            )?;
            let post = eq::verify_coe(act_x, act_y, &back, config.depth, config.period_bound)?;
            let output = Document::GroupoidIso(doc::groupoid_iso_doc_from(
                &format!("{name}-iso"),
                &b.x_action,
                &b.y_action,
                &b.phi,
                &data,
                act_x.space(),
                act_y.space(),
            ));
            Ok(Conversion {
                source_name: name,
                pre,
                post,
                output,
            })
        }
        ConvertKind::GroupoidIsoToCoe => {
            let name = single(reg.groupoid_iso_names(), "groupoid_iso")?;
            let b = reg.groupoid_iso_bundle(&name)?;
            let act_x = reg.action(&b.x_action)?;
            let act_y = reg.action(&b.y_action)?;
            let pre = if no_preverify {
                None
            } else {
                let mut report = Report::new("groupoid_iso");
                for (i, e) in b.data.x_entries.iter().enumerate() {
                    let bis = orbiteq::groupoid::Bisection::new(
                        e.u.clone(),
                        e.src_m.clone(),
                        e.src_n.clone(),
                        e.v.clone(),
                    );
                    match bis.validate(act_x, config.depth) {
                        Ok(()) => report.push(Check::verified(format!("x_entry[{i}]"))),
                        Err(err) => {
                            report.push(Check::refuted(format!("x_entry[{i}]"), err.to_string()))
                        }
                    }
                }
                for (i, e) in b.data.y_entries.iter().enumerate() {
                    let bis = orbiteq::groupoid::Bisection::new(
                        e.u.clone(),
                        e.src_m.clone(),
                        e.src_n.clone(),
                        e.v.clone(),
                    );
                    match bis.validate(act_y, config.depth) {
                        Ok(()) => report.push(Check::verified(format!("y_entry[{i}]"))),
                        Err(err) => {
                            report.push(Check::refuted(format!("y_entry[{i}]"), err.to_string()))
                        }
                    }
                }
                Some(report)
            };
            let data = eq::coe_from_groupoid_iso(
                act_x,
                act_y,
                &b.data,
                config.degree_bound,
                config.depth,
                config.period_bound,
            )?;
            let post = eq::verify_coe(act_x, act_y, &data, config.depth, config.period_bound)?;
            let output = Document::Coe(doc::coe_doc_from(
                &format!("{name}-coe"),
                &b.x_action,
                &b.y_action,
                &b.phi,
                &data,
                act_x.space(),
                act_y.space(),
            ));
            Ok(Conversion {
                source_name: name,
                pre,
                post,
                output,
            })
        }
        ConvertKind::SemigroupToGroup => {
            let name = single(reg.coe_names(), "coe")?;
            let b = reg.coe_bundle(&name)?;
            let act_x = reg.action(&b.x_action)?;
            let act_y = reg.action(&b.y_action)?;
            let pre = if no_preverify {
                None
            } else {
                Some(eq::verify_coe(
                    act_x,
                    act_y,
                    &b.data,
                    config.depth,
                    config.period_bound,
                )?)
            };
            let (data, post) = eq::semigroup_to_group(act_x, act_y, &b.data, config.depth)?;
            let output = Document::GroupCoe(doc::group_coe_doc_from(
                &format!("{name}-group"),
                &b.x_action,
                &b.y_action,
                &b.phi,
                &data,
                act_x.space(),
                act_y.space(),
            ));
            Ok(Conversion {
                source_name: name,
                pre,
                post,
                output,
            })
        }
        ConvertKind::GroupToSemigroup => {
            let name = single(reg.group_coe_names(), "group_coe")?;
            let b = reg.group_coe_bundle(&name)?;
            let act_x = reg.action(&b.x_action)?;
            let act_y = reg.action(&b.y_action)?;
            let pre = if no_preverify {
                None
            } else {
                Some(eq::verify_group_coe(act_x, act_y, &b.data, config.depth)?)
            };
            let data = eq::group_to_semigroup(act_x, act_y, &b.data, config.depth)?;
            let post = eq::verify_coe(act_x, act_y, &data, config.depth, config.period_bound)?;
            let output = Document::Coe(doc::coe_doc_from(
                &format!("{name}-coe"),
                &b.x_action,
                &b.y_action,
                &b.phi,
                &data,
                act_x.space(),
                act_y.space(),
            ));
            Ok(Conversion {
                source_name: name,
                pre,
                post,
                output,
            })
        }
    }
}

pub fn cmd_inspect(file: &Path) -> Result<()> {
    let doc = crate::workspace::load_one(file)?;
    println!("schema: {}", doc.schema());
    if let Some(name) = doc.name() {
        println!("name: {name}");
    }
    let value = doc.to_value();
    println!("{:#}", value["payload"]);
    Ok(())
}
